# -*- coding: utf-8 -*-

__author__ = "setpsnr developers"
__version__ = "v1.0.0"
__url__ = "https://github.com/setpsnr/setpsnr"

from setpsnr.estimators import (
    psnr,
    psnr_bar,
    psnr_of_mean_mse,
    estimator_gap,
    psnr_std,
    set_estimate,
    video_psnr,
    video_set_psnrs,
    SetEstimate,
    VideoSetEstimate,
    UndefinedEstimateError,
)
from setpsnr.mse import mse, video_mse, MseRecord, VideoMse, MixedGeometryError
from setpsnr.pixel_ops import canonicalize, CanonicalPair, GeometryError
from setpsnr.distribution import (
    audit,
    predicted_gap,
    simulate_gap,
    gap_vs_set_size,
    SimConfig,
    DistributionAudit,
)
from setpsnr.main import Evaluator, ItemError, warn_mixed_resolution
from setpsnr.report import Report, emit
from setpsnr.startup import run_cli
