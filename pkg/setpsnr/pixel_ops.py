# -*- coding: utf-8 -*-
"""
Canonicalisation of reference / distorted buffers to the channel and quantization
domain in which the MSE of a run is defined.

Channel modes:

* 'rgb': all three RGB channels.
* 'y_bt601_studio': BT.601 luma in studio swing, Y in [16, 235] / 255.
* 'y_full_range': full range luma, Y = 0.299 R + 0.587 G + 0.114 B.

For YCbCr input (raw YUV), the Y-only modes read the Y plane as stored; chroma
planes are never upsampled and 'rgb' mode is rejected.

Quantization modes:

* 'uint8': samples are scaled by 255, rounded half away from zero and clipped to
  [0, 255]; the PSNR peak is 255.
* 'float01': samples stay in [0, 1], optionally clamped; the PSNR peak is 1.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import logging
from typing import Tuple

import numpy as np

from setpsnr.media.buffers import PixelBuffer, BYTE, UNIT_FLOAT, YCBCR

logger = logging.getLogger(__name__)

RGB_MODE = "rgb"
Y_STUDIO = "y_bt601_studio"
Y_FULL = "y_full_range"
Y_MODES = (Y_STUDIO, Y_FULL)

FLOAT01 = "float01"
UINT8 = "uint8"

# BT.601 luma weights
KR, KG, KB = 0.299, 0.587, 0.114

# studio swing luma: 219 levels starting at 16, on a 0..255 scale
STUDIO_OFFSET = 16.0
STUDIO_WEIGHTS = (65.481, 128.553, 24.966)
STUDIO_MIN = 16.0 / 255.0
STUDIO_MAX = 235.0 / 255.0


class GeometryError(ValueError):
    pass


class ChannelModeError(ValueError):
    pass


# ==== single buffer operations ========================================================


def to_unit_float(buf: PixelBuffer) -> PixelBuffer:
    """Returns ``buf`` with samples scaled to [0, 1]."""
    if buf.sample_range == UNIT_FLOAT:
        return buf
    return PixelBuffer(
        [p / 255.0 for p in buf.planes],
        UNIT_FLOAT,
        buf.colorspace,
        buf.subsampling,
        warnings=buf.warnings,
    )


def to_luma(buf: PixelBuffer, mode: str) -> PixelBuffer:
    """
    Converts an RGB buffer to a single luma channel.

    :param buf: Three-channel RGB buffer. 'byte' buffers are scaled to [0, 1] first.
    :param mode: 'y_bt601_studio' or 'y_full_range'. 'rgb' returns ``buf`` unchanged.
    :returns: Single channel 'unit_float' buffer. Single channel input is returned
        unchanged with a warning attached.
    """
    if mode == RGB_MODE:
        return buf
    if mode not in Y_MODES:
        raise ChannelModeError("Unknown channel mode '{}'.".format(mode))

    if buf.channels == 1:
        message = "{0} input is already single-channel; luma conversion skipped".format(
            buf.geometry
        )
        logger.warning(message)
        return buf.with_warning(message)

    if buf.colorspace == YCBCR:
        # stored luma is used as is
        return PixelBuffer(
            buf.planes[:1], buf.sample_range, YCBCR, warnings=buf.warnings
        )

    r, g, b = to_unit_float(buf).planes

    if mode == Y_STUDIO:
        wr, wg, wb = STUDIO_WEIGHTS
        y = (STUDIO_OFFSET + wr * r + wg * g + wb * b) / 255.0
        y = np.clip(y, STUDIO_MIN, STUDIO_MAX)
    else:
        y = KR * r + KG * g + KB * b

    return PixelBuffer((y,), UNIT_FLOAT, YCBCR, warnings=buf.warnings)


def round_half_away(values: np.ndarray) -> np.ndarray:
    """Rounds to the nearest integer, ties away from zero (0.5 -> 1, -0.5 -> -1)."""
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def quantize(buf: PixelBuffer, mode: str, clamp: bool = False) -> PixelBuffer:
    """
    Brings a buffer into the sample domain of a quantization mode.

    :param buf: Input buffer, normally in 'unit_float' range.
    :param mode: 'uint8' or 'float01'.
    :param clamp: Clamp samples to [0, 1] in 'float01' mode.
    :returns: 'byte' buffer holding integers in [0, 255] for 'uint8', 'unit_float'
        buffer otherwise.
    """
    if mode == UINT8:
        if buf.sample_range == BYTE:
            return buf
        planes = [np.clip(round_half_away(p * 255.0), 0.0, 255.0) for p in buf.planes]
        return PixelBuffer(
            planes, BYTE, buf.colorspace, buf.subsampling, warnings=buf.warnings
        )

    if mode == FLOAT01:
        buf = to_unit_float(buf)
        if not clamp:
            return buf
        planes = [np.clip(p, 0.0, 1.0) for p in buf.planes]
        return PixelBuffer(
            planes,
            UNIT_FLOAT,
            buf.colorspace,
            buf.subsampling,
            buf.maxval,
            buf.warnings,
        )

    raise ValueError("Unknown quantization mode '{}'.".format(mode))


# ==== pairs ===========================================================================


class CanonicalPair:
    """
    Reference and distorted buffer in the same channel and quantization domain.

    :param ref_buf: Reference buffer.
    :param dist_buf: Distorted buffer.
    :param peak: Peak sample value used in the PSNR, 255 for 'uint8' and 1 for
        'float01'.
    :param channel_mode: Channel mode the pair was produced with.
    :param quantization: Quantization mode the pair was produced with.
    """

    def __init__(
        self,
        ref_buf: PixelBuffer,
        dist_buf: PixelBuffer,
        peak: float,
        channel_mode: str,
        quantization: str,
    ) -> None:

        if _shape(ref_buf) != _shape(dist_buf):
            raise GeometryError(
                "Canonical buffers differ: {0} vs {1}.".format(
                    ref_buf.geometry, dist_buf.geometry
                )
            )

        self.ref_buf = ref_buf
        self.dist_buf = dist_buf
        self.peak = peak
        self.channel_mode = channel_mode
        self.quantization = quantization

    @property
    def warnings(self) -> Tuple[str, ...]:
        return self.ref_buf.warnings + self.dist_buf.warnings

    @property
    def pixel_count(self) -> int:
        """Total number of samples over all channels (K)."""
        return sum(p.size for p in self.ref_buf.planes)

    def __repr__(self) -> str:
        return "<{0}({1}, peak={2}, {3}/{4})>".format(
            self.__class__.__name__,
            self.ref_buf.geometry,
            self.peak,
            self.channel_mode,
            self.quantization,
        )


def _shape(buf: PixelBuffer):
    return buf.width, buf.height, buf.channels, buf.sample_range


def canonicalize(
    ref: PixelBuffer,
    dist: PixelBuffer,
    channel_mode: str = Y_STUDIO,
    quantization: str = UINT8,
    clamp: bool = False,
) -> CanonicalPair:
    """
    Converts a decoded pair into the domain in which its MSE is computed.

    :param ref: Decoded reference buffer.
    :param dist: Decoded distorted buffer.
    :param channel_mode: 'rgb', 'y_bt601_studio' or 'y_full_range'.
    :param quantization: 'uint8' or 'float01'.
    :param clamp: Clamp float samples to [0, 1].
    :returns: :class:`CanonicalPair`.
    :raises: :class:`GeometryError` if width, height or channel count differ,
        :class:`ChannelModeError` for RGB PSNR on YCbCr input or 16-bit input in
        'uint8' mode.
    """
    shape = (ref.width, ref.height, ref.channels)
    if shape != (dist.width, dist.height, dist.channels):
        raise GeometryError(
            "Reference is {0} but distorted is {1} (width x height x channels).".format(
                ref.geometry, dist.geometry
            )
        )

    for buf in (ref, dist):
        if channel_mode == RGB_MODE and buf.colorspace == YCBCR:
            raise ChannelModeError(
                "RGB PSNR on YCbCr input would require chroma interpolation; "
                "use a Y-only channel mode."
            )
        if quantization == UINT8 and buf.maxval not in (None, 255):
            raise ChannelModeError(
                "Input with maxval {} cannot be used in 'uint8' mode without lossy "
                "rescaling; use 'float01'.".format(buf.maxval)
            )

    if channel_mode in Y_MODES:
        ref, dist = to_luma(ref, channel_mode), to_luma(dist, channel_mode)
    elif channel_mode != RGB_MODE:
        raise ChannelModeError("Unknown channel mode '{}'.".format(channel_mode))

    ref = quantize(ref, quantization, clamp)
    dist = quantize(dist, quantization, clamp)

    peak = 255.0 if quantization == UINT8 else 1.0

    return CanonicalPair(ref, dist, peak, channel_mode, quantization)
