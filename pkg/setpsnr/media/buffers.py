# -*- coding: utf-8 -*-
"""
Pixel buffer type shared by all decoders and the canonicalisation step.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
from typing import Optional, Tuple

import numpy as np


UNIT_FLOAT = "unit_float"
BYTE = "byte"
RANGES = (UNIT_FLOAT, BYTE)

RGB = "rgb"
YCBCR = "ycbcr"
GRAY = "gray"
COLORSPACES = (RGB, YCBCR, GRAY)

SUBSAMPLINGS = ("420", "444")


class MediaError(Exception):
    pass


class DecodeError(MediaError):
    """
    Raised for malformed, truncated or unsupported media.

    :param message: Description of the problem.
    :param offset: Byte offset in the input stream where decoding failed.
    """

    def __init__(self, message: str, offset: Optional[int] = None) -> None:
        if offset is not None:
            message = "{0} (at byte offset {1})".format(message, offset)
        super().__init__(message)
        self.offset = offset


class ManifestError(MediaError):
    pass


class PixelBuffer:
    """
    One decoded image or video frame.

    Samples are stored as float64 planes of shape ``(height, width)``. Chroma planes of
    4:2:0 frames keep their quarter resolution and are never upsampled.

    :param planes: Sequence of 2D arrays, one per channel. For RGB data the order is
        R, G, B; for YCbCr data Y, Cb, Cr.
    :param sample_range: Either 'unit_float' (values in [0, 1]) or 'byte' (integers in
        [0, 255]).
    :param colorspace: One of 'rgb', 'ycbcr' or 'gray'.
    :param subsampling: Chroma subsampling of YCbCr data, '420' or '444'.
    :param maxval: PNM maxval of the source file, if any.
    :param warnings: Notes attached by processing steps which did not alter the data.
    """

    def __init__(
        self,
        planes,
        sample_range: str = BYTE,
        colorspace: str = GRAY,
        subsampling: Optional[str] = None,
        maxval: Optional[int] = None,
        warnings: Tuple[str, ...] = (),
    ) -> None:

        self.planes = tuple(np.asarray(p, dtype=np.float64) for p in planes)
        self.sample_range = sample_range
        self.colorspace = colorspace
        self.subsampling = subsampling
        self.maxval = maxval
        self.warnings = tuple(warnings)

        self._validate()

    @property
    def channels(self) -> int:
        return len(self.planes)

    @property
    def height(self) -> int:
        return self.planes[0].shape[0]

    @property
    def width(self) -> int:
        return self.planes[0].shape[1]

    @property
    def peak(self) -> float:
        return 255.0 if self.sample_range == BYTE else 1.0

    @property
    def geometry(self) -> str:
        return "{0}x{1}x{2}".format(self.width, self.height, self.channels)

    def _validate(self) -> None:

        if self.sample_range not in RANGES:
            raise ValueError("Unknown sample range '{}'.".format(self.sample_range))
        if self.colorspace not in COLORSPACES:
            raise ValueError("Unknown colorspace '{}'.".format(self.colorspace))
        if self.channels not in (1, 3):
            raise ValueError("Buffers must have 1 or 3 channels.")
        if self.channels == 1 and self.colorspace == RGB:
            raise ValueError("Single channel buffers must be 'gray' or 'ycbcr'.")

        for plane in self.planes:
            if plane.ndim != 2:
                raise ValueError("Planes must be two-dimensional.")

        if self.channels == 3:
            h, w = self.planes[0].shape
            if self.subsampling == "420":
                chroma_shape = (h // 2, w // 2)
            else:
                chroma_shape = (h, w)
            for plane in self.planes[1:]:
                if plane.shape != chroma_shape:
                    raise ValueError(
                        "Chroma plane has shape {0}, expected {1}.".format(
                            plane.shape, chroma_shape
                        )
                    )

    def with_warning(self, message: str) -> "PixelBuffer":
        """Returns a copy of the buffer with an additional warning attached."""
        return PixelBuffer(
            self.planes,
            self.sample_range,
            self.colorspace,
            self.subsampling,
            self.maxval,
            self.warnings + (message,),
        )

    def __repr__(self) -> str:
        return "<{0}({1}, range={2}, colorspace={3})>".format(
            self.__class__.__name__, self.geometry, self.sample_range, self.colorspace
        )
