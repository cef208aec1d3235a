# -*- coding: utf-8 -*-
"""
PSNR aggregation for sets of images, single videos and sets of videos.

Two set-level estimators are provided:

* "mean-of-PSNR" (:func:`psnr_bar`): the arithmetic mean of per-item PSNRs, which is
  the PSNR of the geometric mean of the item MSEs.
* "PSNR-of-mean-MSE" (:func:`psnr_of_mean_mse`): the PSNR of the arithmetic mean of
  the item MSEs.

Their difference, :func:`estimator_gap`, is ``10 log10(AM / GM)`` of the MSEs and never
negative. For video sets, :func:`video_set_psnrs` computes PSNR-1 (pooled frame
PSNRs), PSNR-2 (mean of video PSNRs) and PSNR-3 (PSNR of the mean video MSE).

All geometric means are computed as means of logarithms; products of MSEs are never
formed.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import math
import logging
from typing import Optional, Sequence, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

INF = math.inf

# zero MSE policies
ZERO_ERROR = "error"
ZERO_FLOOR = "floor"
ZERO_MSE_POLICIES = (ZERO_ERROR, ZERO_FLOOR)

# floor substituted for a zero MSE, in units of peak**2
MSE_FLOOR = 2.0 ** -52

# single video options
MEAN_FRAME_PSNR = "mean_frame_psnr"
PSNR_OF_MEAN_FRAME_MSE = "psnr_of_mean_frame_mse"
VIDEO_PSNR_OPTIONS = (MEAN_FRAME_PSNR, PSNR_OF_MEAN_FRAME_MSE)

# video set weighting variants
BY_FRAMES = "frames"
BY_VIDEOS = "videos"
WEIGHTINGS = (BY_FRAMES, BY_VIDEOS)

ESTIMATOR_NAMES = {
    "psnr_bar": "mean-of-PSNR (geometric mean of MSE)",
    "psnr_of_mean_mse": "PSNR-of-mean-MSE (arithmetic mean of MSE)",
    "gap": "mean-of-PSNR minus PSNR-of-mean-MSE = 10 log10(AM/GM of MSE)",
    "psnr1": "PSNR-1: mean of all frame PSNRs",
    "psnr2": "PSNR-2: mean of per-video PSNRs",
    "psnr3": "PSNR-3: PSNR of the mean per-video MSE",
    MEAN_FRAME_PSNR: "video PSNR as mean-of-PSNR over frames",
    PSNR_OF_MEAN_FRAME_MSE: "video PSNR as PSNR-of-mean-MSE over frames",
}


class UndefinedEstimateError(ValueError):
    """
    Raised when a geometric-mean based estimate meets a zero MSE.

    :ivar item_ids: Identifiers of the offending items.
    """

    def __init__(self, message: str, item_ids: Sequence[str] = ()) -> None:
        super().__init__(message)
        self.item_ids = list(item_ids)


# ==== helpers =========================================================================


def fmean(values) -> float:
    """Arithmetic mean with compensated summation."""
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size > 0 and values.min() == values.max():
        # exact for constant samples
        return float(values[0])
    return math.fsum(values.tolist()) / values.size


def sample_std(values) -> Optional[float]:
    """Sample standard deviation (``N - 1`` divisor), ``None`` for fewer than two."""
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size < 2:
        return None
    mean = fmean(values)
    return math.sqrt(math.fsum(((values - mean) ** 2).tolist()) / (values.size - 1))


def mean_log10(values) -> float:
    """Mean of ``log10(values)``, i.e. ``log10`` of the geometric mean."""
    return fmean(np.log10(np.asarray(values, dtype=np.float64)))


def _as_array(mses) -> np.ndarray:
    mses = np.asarray(mses, dtype=np.float64).ravel()
    if mses.size == 0:
        raise ValueError("At least one MSE value is required.")
    if np.any(mses < 0) or not np.all(np.isfinite(mses)):
        raise ValueError("MSE values must be finite and non-negative.")
    return mses


def zero_floor(peak: float = 1.0) -> float:
    """MSE substituted for exact zeros under the 'floor' policy."""
    return peak ** 2 * MSE_FLOOR


def apply_zero_policy(
    mses,
    peak: float = 1.0,
    zero_mse: str = ZERO_ERROR,
    item_ids: Optional[Sequence[str]] = None,
) -> Tuple[np.ndarray, List[str]]:
    """
    Prepares MSEs for a geometric mean.

    :param mses: MSE values.
    :param peak: Peak sample value of the domain the MSEs were measured in.
    :param zero_mse: 'error' raises :class:`UndefinedEstimateError` on zeros, 'floor'
        replaces them by :func:`zero_floor`.
    :param item_ids: Item identifiers used in messages.
    :returns: ``(mses, warnings)``.
    """
    mses = _as_array(mses)
    zeros = np.flatnonzero(mses == 0)

    if zeros.size == 0:
        return mses, []

    if item_ids is None:
        item_ids = ["#{}".format(i) for i in range(mses.size)]
    offending = [str(item_ids[i]) for i in zeros]

    if zero_mse == ZERO_ERROR:
        raise UndefinedEstimateError(
            "Mean-of-PSNR is undefined (infinite) for zero MSE of {0} item(s): "
            "{1}".format(len(offending), ", ".join(offending)),
            offending,
        )
    elif zero_mse == ZERO_FLOOR:
        mses = mses.copy()
        mses[zeros] = zero_floor(peak)
        message = "zero MSE floored to {0:.3e} for: {1}".format(
            zero_floor(peak), ", ".join(offending)
        )
        logger.warning(message)
        return mses, [message]
    else:
        raise ValueError("Unknown zero MSE policy '{}'.".format(zero_mse))


# ==== single values and sets ==========================================================


def psnr(mse: float, peak: float = 1.0) -> float:
    """
    PSNR in dB, ``10 log10(peak**2 / mse)``.

    :param mse: Non-negative MSE.
    :param peak: Peak sample value, 1 for [0, 1] data and 255 for 8-bit data.
    :returns: PSNR in dB; ``math.inf`` for a zero MSE.
    """
    if mse < 0:
        raise ValueError("MSE must be non-negative, got {}.".format(mse))
    if peak <= 0:
        raise ValueError("Peak must be positive, got {}.".format(peak))
    if mse == 0:
        return INF
    return 20.0 * math.log10(peak) - 10.0 * math.log10(mse)


def psnr_bar(
    mses,
    peak: float = 1.0,
    zero_mse: str = ZERO_ERROR,
    item_ids: Optional[Sequence[str]] = None,
) -> float:
    """
    Mean of per-item PSNRs, computed as the PSNR of the geometric mean of the MSEs.

    :raises: :class:`UndefinedEstimateError` for zero MSEs unless ``zero_mse='floor'``.
    """
    mses, _ = apply_zero_policy(mses, peak, zero_mse, item_ids)
    return 20.0 * math.log10(peak) - 10.0 * mean_log10(mses)


def psnr_of_mean_mse(mses, peak: float = 1.0) -> float:
    """PSNR of the arithmetic mean of the MSEs; ``math.inf`` if all MSEs are zero."""
    mses = _as_array(mses)
    mean = fmean(mses)
    if mean == 0:
        logger.warning("All MSE values are zero, PSNR-of-mean-MSE is infinite.")
    return psnr(mean, peak)


def estimator_gap(
    mses,
    zero_mse: str = ZERO_ERROR,
    item_ids: Optional[Sequence[str]] = None,
    peak: float = 1.0,
) -> float:
    """
    Difference between mean-of-PSNR and PSNR-of-mean-MSE in dB, ``10 log10(AM/GM)``.

    The result does not depend on the scale of the MSEs. ``peak`` only matters for
    the value substituted under the 'floor' policy.
    """
    mses, _ = apply_zero_policy(mses, peak, zero_mse, item_ids)
    if mses.min() == mses.max():
        return 0.0
    gap = 10.0 * (math.log10(fmean(mses)) - mean_log10(mses))
    # AM >= GM; clip rounding noise for (nearly) equal values
    return max(gap, 0.0)


def psnr_std(
    mses,
    peak: float = 1.0,
    zero_mse: str = ZERO_ERROR,
    item_ids: Optional[Sequence[str]] = None,
) -> Optional[float]:
    """Sample standard deviation of the per-item PSNRs in dB."""
    mses, _ = apply_zero_policy(mses, peak, zero_mse, item_ids)
    return sample_std(20.0 * math.log10(peak) - 10.0 * np.log10(mses))


class SetEstimate:
    """
    Both set-level PSNR estimates of a list of MSEs with their gap and MSE statistics.

    :ivar n_items: Number of MSE values.
    :ivar psnr_bar: Mean-of-PSNR in dB.
    :ivar psnr_of_mean_mse: PSNR-of-mean-MSE in dB.
    :ivar gap_db: ``psnr_bar - psnr_of_mean_mse`` in dB.
    :ivar psnr_std: Sample standard deviation of item PSNRs in dB.
    :ivar mse_mean: Mean MSE in squared sample units.
    :ivar mse_std: Sample standard deviation of the MSE (``None`` for one item).
    :ivar mse_cv: Coefficient of variation ``mse_std / mse_mean``.
    :ivar warnings: Messages produced while computing the estimate.
    """

    def __init__(
        self,
        mses,
        peak: float = 1.0,
        zero_mse: str = ZERO_ERROR,
        item_ids: Optional[Sequence[str]] = None,
    ) -> None:

        raw = _as_array(mses)
        floored, self.warnings = apply_zero_policy(raw, peak, zero_mse, item_ids)

        if raw.max() == 0:
            message = "all MSE values are zero, both estimates use the floor " \
                "{:.3e}".format(zero_floor(peak))
            logger.warning(message)
            self.warnings.append(message)

        self.n_items = raw.size
        self.peak = peak
        self.psnr_bar = psnr_bar(floored, peak)
        self.gap_db = estimator_gap(floored)
        if self.gap_db == 0.0:
            self.psnr_of_mean_mse = self.psnr_bar
        else:
            # psnr_bar >= psnr_of_mean_mse also after rounding
            self.psnr_of_mean_mse = min(psnr_of_mean_mse(floored, peak), self.psnr_bar)
        self.psnr_std = psnr_std(floored, peak)

        self.mse_mean = fmean(raw)
        self.mse_std = sample_std(raw)
        if self.mse_std is None or self.mse_mean == 0:
            self.mse_cv = None
        else:
            self.mse_cv = self.mse_std / self.mse_mean

    def __repr__(self) -> str:
        return "<{0}(n={1}, psnr_bar={2:.4f} dB, psnr_of_mean_mse={3:.4f} dB)>".format(
            self.__class__.__name__,
            self.n_items,
            self.psnr_bar,
            self.psnr_of_mean_mse,
        )


def set_estimate(
    mses,
    peak: float = 1.0,
    zero_mse: str = ZERO_ERROR,
    item_ids: Optional[Sequence[str]] = None,
) -> SetEstimate:
    """Computes a :class:`SetEstimate`."""
    return SetEstimate(mses, peak, zero_mse, item_ids)


# ==== videos ==========================================================================


def video_psnr(
    v,
    option: str = PSNR_OF_MEAN_FRAME_MSE,
    peak: Optional[float] = None,
    zero_mse: str = ZERO_ERROR,
) -> float:
    """
    PSNR of a single video.

    :param v: :class:`setpsnr.mse.VideoMse`.
    :param option: 'psnr_of_mean_frame_mse' (default, PSNR of the mean frame MSE) or
        'mean_frame_psnr' (mean of frame PSNRs).
    :param peak: Peak sample value. Defaults to the peak stored with ``v``.
    :param zero_mse: Zero MSE policy for 'mean_frame_psnr'.
    :raises: :class:`UndefinedEstimateError` for zero-MSE frames under
        'mean_frame_psnr'.
    """
    peak = v.peak if peak is None else peak

    if option == PSNR_OF_MEAN_FRAME_MSE:
        return psnr(v.video_mse, peak)
    elif option == MEAN_FRAME_PSNR:
        return psnr_bar(v.frame_mses, peak, zero_mse, v.item_ids)
    else:
        raise ValueError("Unknown video PSNR option '{}'.".format(option))


class VideoSetEstimate:
    """
    PSNR-1, PSNR-2 and PSNR-3 of a set of videos.

    :ivar psnr1: Mean of frame PSNRs in dB.
    :ivar psnr2: Mean over videos of the PSNR of the mean frame MSE, in dB.
    :ivar psnr3: PSNR of the mean video MSE in dB.
    :ivar per_video: The :class:`setpsnr.mse.VideoMse` instances.
    :ivar frame_counts: Number of frames per video.
    :ivar warnings: Messages produced while computing the estimate.
    """

    def __init__(self, psnr1, psnr2, psnr3, per_video, warnings=()) -> None:
        self.psnr1 = psnr1
        self.psnr2 = psnr2
        self.psnr3 = psnr3
        self.per_video = list(per_video)
        self.frame_counts = [len(v.frame_mses) for v in self.per_video]
        self.warnings = list(warnings)

    def __repr__(self) -> str:
        return "<{0}(psnr1={1:.4f}, psnr2={2:.4f}, psnr3={3:.4f} dB)>".format(
            self.__class__.__name__, self.psnr1, self.psnr2, self.psnr3
        )


def video_set_psnrs(
    videos,
    peak: Optional[float] = None,
    zero_mse: str = ZERO_ERROR,
    psnr1_weighting: str = BY_FRAMES,
    psnr3_weighting: str = BY_VIDEOS,
) -> VideoSetEstimate:
    """
    Computes PSNR-1, PSNR-2 and PSNR-3 for a set of videos.

    :param videos: List of :class:`setpsnr.mse.VideoMse`.
    :param peak: Peak sample value. Defaults to the peak of the first video.
    :param zero_mse: Zero MSE policy for the geometric-mean based PSNR-1 and PSNR-2.
    :param psnr1_weighting: 'frames' pools all frames; 'videos' averages the
        per-video mean frame PSNRs.
    :param psnr3_weighting: 'videos' averages video MSEs without weights; 'frames'
        weights them by frame count.
    :returns: :class:`VideoSetEstimate`.
    """
    videos = list(videos)
    if not videos:
        raise ValueError("At least one video is required.")
    if any(len(v.frame_mses) == 0 for v in videos):
        raise ValueError("Every video needs at least one frame.")
    if psnr1_weighting not in WEIGHTINGS or psnr3_weighting not in WEIGHTINGS:
        raise ValueError("Weighting must be one of {}.".format(WEIGHTINGS))

    peak = videos[0].peak if peak is None else peak
    warnings = []

    counts = [len(v.frame_mses) for v in videos]
    equal_counts = len(set(counts)) == 1
    if not equal_counts:
        message = "videos have unequal frame counts {0}; PSNR-1 uses {1} weighting, " \
            "PSNR-3 uses {2} weighting".format(counts, psnr1_weighting, psnr3_weighting)
        logger.warning(message)
        warnings.append(message)

    all_mses = np.concatenate([np.asarray(v.frame_mses) for v in videos])
    all_ids = [i for v in videos for i in v.item_ids]
    frames, floor_warnings = apply_zero_policy(all_mses, peak, zero_mse, all_ids)
    warnings += floor_warnings

    if psnr1_weighting == BY_FRAMES:
        psnr1 = psnr_bar(frames, peak)
    else:
        per_video = np.split(frames, np.cumsum(counts)[:-1])
        psnr1 = fmean([psnr_bar(f, peak) for f in per_video])

    video_ids = [v.video_id for v in videos]
    video_mses, floor_warnings = apply_zero_policy(
        [v.video_mse for v in videos], peak, zero_mse, video_ids
    )
    warnings += floor_warnings
    psnr2 = psnr_bar(video_mses, peak)

    if psnr3_weighting == BY_VIDEOS:
        psnr3 = psnr_of_mean_mse(video_mses, peak)
    else:
        psnr3 = psnr_of_mean_mse(frames, peak)

    # clamp rounding noise where the ordering PSNR-1 >= PSNR-2 >= PSNR-3 is exact
    if equal_counts or psnr1_weighting == BY_VIDEOS:
        psnr2 = min(psnr2, psnr1)
    if equal_counts or psnr3_weighting == BY_VIDEOS:
        psnr3 = min(psnr3, psnr2)

    return VideoSetEstimate(psnr1, psnr2, psnr3, videos, warnings)
