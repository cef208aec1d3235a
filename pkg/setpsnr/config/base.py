# -*- coding: utf-8 -*-
"""
Configuration paths.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import os.path as osp


# ======================================================================================
# Configuration paths
# ======================================================================================


def get_home_dir() -> str:
    """
    Return user home directory.
    """
    path = osp.expanduser("~")

    if osp.isdir(path):
        return path

    # get home from alternative locations
    for env_var in ("HOME", "USERPROFILE", "TMP"):
        path = os.environ.get(env_var, "")
        if osp.isdir(path):
            return path

    raise RuntimeError(
        "Please set the environment variable HOME to your user/home directory path "
        "so setpsnr can store its settings."
    )


def get_conf_path(subfolder: str, filename: str = None) -> str:
    """Return absolute path to the config file with the specified filename."""
    conf_dir = osp.join(get_home_dir(), subfolder)

    os.makedirs(conf_dir, exist_ok=True)

    if filename is None:
        return conf_dir
    else:
        return osp.join(conf_dir, filename)

