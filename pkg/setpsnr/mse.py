# -*- coding: utf-8 -*-
"""
Per-item mean squared error between canonical reference and distorted buffers.

The MSE is ``sum((X - Y)**2) / K`` over all samples of all channels, where ``K`` is
the total number of samples (``3 * width * height`` in RGB mode). Squared errors are
accumulated with compensated summation on a fixed grid of row chunks: every chunk is
summed with :func:`math.fsum` and the chunk sums are combined in index order. The
grid depends only on the buffer shape and ``chunk_rows``, so the result does not
depend on how many workers process the chunks.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import math
import logging
from collections import OrderedDict
from typing import List, Optional, Sequence

import numpy as np

from setpsnr.pixel_ops import CanonicalPair
from setpsnr.estimators import (
    psnr,
    psnr_bar,
    fmean,
    ZERO_ERROR,
    UndefinedEstimateError,
)

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_ROWS = 256


class MixedGeometryError(ValueError):
    pass


# ======================================================================================
# per item MSE
# ======================================================================================


class MseRecord:
    """
    MSE of one reference / distorted pair.

    :ivar item_id: Identifier of the pair.
    :ivar video_id: Video the pair belongs to, if any.
    :ivar mse: Mean squared error in squared sample units of the canonical domain.
    :ivar pixel_count: Number of samples K over all channels.
    :ivar channel_mode: Channel mode of the canonical domain.
    :ivar quantization: Quantization mode of the canonical domain.
    :ivar geometry: Canonical geometry string 'WxHxC'.
    :ivar peak: Peak sample value of the canonical domain.
    :ivar warnings: Warnings raised while preparing the pair.
    """

    def __init__(
        self,
        item_id: str,
        mse: float,
        pixel_count: int,
        channel_mode: str,
        quantization: str,
        peak: float = 1.0,
        video_id: Optional[str] = None,
        geometry: str = "",
        warnings: Sequence[str] = (),
    ) -> None:

        if mse < 0:
            raise ValueError("MSE must be non-negative, got {}.".format(mse))

        self.item_id = item_id
        self.video_id = video_id
        self.mse = mse
        self.pixel_count = pixel_count
        self.channel_mode = channel_mode
        self.quantization = quantization
        self.peak = peak
        self.geometry = geometry
        self.warnings = tuple(warnings)

    @property
    def psnr(self) -> float:
        """PSNR of the item in dB."""
        return psnr(self.mse, self.peak)

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["id"] = self.item_id
        d["video"] = self.video_id
        d["mse"] = self.mse
        d["psnr_db"] = self.psnr
        d["pixel_count"] = self.pixel_count
        d["geometry"] = self.geometry
        return d

    def __repr__(self) -> str:
        return "<{0}(id={1!r}, mse={2!r}, K={3})>".format(
            self.__class__.__name__, self.item_id, self.mse, self.pixel_count
        )


def _chunks(pair: CanonicalPair, chunk_rows: int):
    """Canonical chunk grid: planes in order, rows top to bottom."""
    for plane in range(len(pair.ref_buf.planes)):
        height = pair.ref_buf.planes[plane].shape[0]
        for start in range(0, height, chunk_rows):
            yield plane, start, min(start + chunk_rows, height)


def chunk_sse(pair: CanonicalPair, plane: int, start: int, stop: int) -> float:
    """
    Sum of squared errors of rows ``start:stop`` of one plane, correctly rounded.
    """
    ref = pair.ref_buf.planes[plane][start:stop]
    dist = pair.dist_buf.planes[plane][start:stop]
    diff = ref - dist
    return math.fsum((diff * diff).ravel().tolist())


def sse(pair: CanonicalPair, chunk_rows: int = DEFAULT_CHUNK_ROWS, manager=None):
    """
    Sum of squared errors over all planes of a canonical pair.

    :param pair: :class:`setpsnr.pixel_ops.CanonicalPair`.
    :param chunk_rows: Rows per accumulation chunk.
    :param manager: Optional :class:`setpsnr.manager.Manager` to process chunks in
        parallel.
    """
    if chunk_rows < 1:
        raise ValueError("'chunk_rows' must be at least 1.")

    args = [(pair,) + chunk for chunk in _chunks(pair, chunk_rows)]

    if manager is None or len(args) == 1:
        partials = [chunk_sse(*a) for a in args]
    else:
        partials = manager.map(chunk_sse, args)

    return math.fsum(partials)


def mse(
    pair: CanonicalPair,
    item_id: str = "",
    video_id: Optional[str] = None,
    chunk_rows: int = DEFAULT_CHUNK_ROWS,
    manager=None,
) -> MseRecord:
    """
    Computes the MSE of a canonical pair.

    :param pair: :class:`setpsnr.pixel_ops.CanonicalPair`.
    :param item_id: Identifier of the pair.
    :param video_id: Video the pair belongs to.
    :param chunk_rows: Rows per accumulation chunk.
    :param manager: Optional :class:`setpsnr.manager.Manager` for chunk parallelism.
    :returns: :class:`MseRecord`.
    """
    k = pair.pixel_count
    value = sse(pair, chunk_rows, manager) / k

    logger.debug("MSE of '%s': %r (K=%s)", item_id, value, k)

    return MseRecord(
        item_id,
        value,
        k,
        pair.channel_mode,
        pair.quantization,
        pair.peak,
        video_id,
        pair.ref_buf.geometry,
        pair.warnings,
    )


# ======================================================================================
# videos
# ======================================================================================


class VideoMse:
    """
    Frame MSEs of a single video with both single-video PSNR variants.

    :ivar video_id: Video id.
    :ivar frame_mses: Frame MSEs in frame order.
    :ivar item_ids: Frame item ids.
    :ivar video_mse: Arithmetic mean of the frame MSEs.
    :ivar psnr_from_mean_mse: PSNR of :attr:`video_mse` in dB.
    :ivar mean_of_frame_psnrs: Mean of frame PSNRs in dB; ``None`` if a frame has zero
        MSE and the zero MSE policy is 'error'.
    :ivar pixel_count: Samples per frame.
    :ivar peak: Peak sample value.
    """

    def __init__(
        self,
        video_id: str,
        frame_mses: Sequence[float],
        item_ids: Sequence[str],
        pixel_count: int,
        peak: float = 1.0,
        zero_mse: str = ZERO_ERROR,
    ) -> None:

        self.video_id = video_id
        self.frame_mses = [float(m) for m in frame_mses]
        self.item_ids = list(item_ids)
        self.pixel_count = pixel_count
        self.peak = peak

        self.video_mse = fmean(self.frame_mses)
        self.psnr_from_mean_mse = psnr(self.video_mse, peak)

        try:
            self.mean_of_frame_psnrs = psnr_bar(
                self.frame_mses, peak, zero_mse, self.item_ids
            )
        except UndefinedEstimateError:
            self.mean_of_frame_psnrs = None

    @property
    def n_frames(self) -> int:
        return len(self.frame_mses)

    def to_dict(self) -> "OrderedDict":
        d = OrderedDict()
        d["id"] = self.video_id
        d["n_frames"] = self.n_frames
        d["video_mse"] = self.video_mse
        d["psnr_mean_mse_db"] = self.psnr_from_mean_mse
        d["psnr_mean_psnr_db"] = self.mean_of_frame_psnrs
        return d

    def __repr__(self) -> str:
        return "<{0}(id={1!r}, {2} frames, video_mse={3!r})>".format(
            self.__class__.__name__, self.video_id, self.n_frames, self.video_mse
        )


def video_mse(frames: List[MseRecord], zero_mse: str = ZERO_ERROR) -> VideoMse:
    """
    Aggregates the frame MSEs of one video.

    :param frames: Frame records in frame order.
    :param zero_mse: Zero MSE policy for the mean-of-PSNR variant.
    :returns: :class:`VideoMse`.
    :raises: :class:`ValueError` for an empty frame list or frames from different
        videos, :class:`MixedGeometryError` if frames differ in sample count.
    """
    if len(frames) == 0:
        raise ValueError("A video needs at least one frame.")

    video_ids = {f.video_id for f in frames}
    if len(video_ids) > 1:
        raise ValueError(
            "Frames belong to different videos: {}.".format(
                sorted(str(v) for v in video_ids)
            )
        )

    counts = sorted({f.pixel_count for f in frames})
    if len(counts) > 1:
        raise MixedGeometryError(
            "Frames of video '{0}' have different sample counts {1}.".format(
                frames[0].video_id, counts
            )
        )

    return VideoMse(
        frames[0].video_id,
        [f.mse for f in frames],
        [f.item_id for f in frames],
        counts[0],
        frames[0].peak,
        zero_mse,
    )


def group_videos(
    records: List[MseRecord], zero_mse: str = ZERO_ERROR
) -> List[VideoMse]:
    """
    Groups records by video id, in order of first appearance, and aggregates each
    group with :func:`video_mse`.
    """
    groups = OrderedDict()
    for record in records:
        groups.setdefault(record.video_id, []).append(record)
    return [video_mse(frames, zero_mse) for frames in groups.values()]
