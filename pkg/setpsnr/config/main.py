# -*- coding: utf-8 -*-
"""
setpsnr configuration options.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
from setpsnr.config.user import UserConfig

PACKAGE_NAME = "setpsnr"
SUBFOLDER = ".%s" % PACKAGE_NAME


# ======================================================================================
#  Defaults
# ======================================================================================
DEFAULTS = [
    (
        "Evaluation",
        {
            "channel_mode": "y_bt601_studio",
            "quantization": "uint8",
            "clamp": False,
            "zero_mse": "error",
            "video_psnr": "psnr_of_mean_frame_mse",
            "psnr1_weighting": "frames",
            "psnr3_weighting": "videos",
            "workers": 4,
            "chunk_rows": 256,
        },
    ),
    (
        "Distribution",
        {
            "hist_bins": 0,
            "fit_histogram": True,
        },
    ),
    (
        "Simulation",
        {
            "n_samples": 10000,
            "lambda": 1.0,
            "seed": 7,
            "n_trials": 100,
        },
    ),
    (
        "Report",
        {
            "format": "json",
        },
    ),
    (
        "Logging",
        {
            "file_level": 20,
            "console_level": 30,
            "days_to_keep": 365,
        },
    ),
]


# ======================================================================================
# Config instance
# ======================================================================================
# 1. Changing the default value of an option needs a MINOR version update.
# 2. Removing or renaming options needs a MAJOR version update, this resets the
#    stored options of all users.
CONF_VERSION = "1.0.0"

try:
    CONF = UserConfig(
        PACKAGE_NAME,
        defaults=DEFAULTS,
        load=True,
        version=CONF_VERSION,
        subfolder=SUBFOLDER,
    )
except Exception:
    CONF = UserConfig(
        PACKAGE_NAME,
        defaults=DEFAULTS,
        load=False,
        version=CONF_VERSION,
        subfolder=SUBFOLDER,
    )
