# -*- coding: utf-8 -*-
"""
Reading of headerless planar 8-bit YUV files (yuv420p and yuv444p).

Raw files carry no metadata: width, height and subsampling must always be given
explicitly. Frame ``f`` of a 4:2:0 stream occupies bytes ``[f * 1.5wh, (f+1) * 1.5wh)``
and consists of the full resolution Y plane followed by the quarter resolution Cb
and Cr planes.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os

import numpy as np

from setpsnr.media.buffers import PixelBuffer, DecodeError, BYTE, YCBCR, SUBSAMPLINGS


def _check_geometry(width: int, height: int, subsampling: str) -> None:
    if subsampling not in SUBSAMPLINGS:
        raise DecodeError("Unsupported chroma subsampling '{}'".format(subsampling))
    if width <= 0 or height <= 0:
        raise DecodeError("Invalid frame size {0}x{1}".format(width, height))
    if subsampling == "420" and (width % 2 or height % 2):
        raise DecodeError(
            "4:2:0 frames need even dimensions, got {0}x{1}".format(width, height)
        )


def chroma_shape(width: int, height: int, subsampling: str = "420"):
    """Returns the ``(rows, columns)`` of one chroma plane."""
    if subsampling == "420":
        return height // 2, width // 2
    return height, width


def frame_size(width: int, height: int, subsampling: str = "420") -> int:
    """
    Number of bytes per frame.

    :param width: Frame width in pixels.
    :param height: Frame height in pixels.
    :param subsampling: '420' or '444'.
    """
    _check_geometry(width, height, subsampling)
    rows, cols = chroma_shape(width, height, subsampling)
    return width * height + 2 * rows * cols


def count_frames(n_bytes: int, width: int, height: int, subsampling: str = "420"):
    """
    Number of complete frames in a stream of ``n_bytes`` bytes.

    :raises: :class:`DecodeError` if the stream length is not a multiple of the frame
        size.
    """
    size = frame_size(width, height, subsampling)
    n_frames, rest = divmod(n_bytes, size)
    if rest:
        raise DecodeError(
            "Stream length {0} is not a multiple of the frame size {1}".format(
                n_bytes, size
            ),
            n_frames * size,
        )
    return n_frames


def decode_yuv_frame(
    data: bytes, width: int, height: int, frame_index: int, subsampling: str = "420"
) -> PixelBuffer:
    """
    Extracts a single frame from a planar YUV byte stream.

    :param data: Byte stream holding consecutive frames.
    :param width: Frame width in pixels.
    :param height: Frame height in pixels.
    :param frame_index: Zero-based index of the frame to read.
    :param subsampling: '420' or '444'.
    :returns: 'ycbcr' :class:`PixelBuffer` in 'byte' range with planes Y, Cb, Cr.
    :raises: :class:`DecodeError` for odd 4:2:0 dimensions or if the stream is too short
        for the requested frame.
    """
    size = frame_size(width, height, subsampling)

    if frame_index < 0:
        raise DecodeError("Frame index must be non-negative, got %s" % frame_index)

    start = frame_index * size
    end = start + size

    if len(data) < end:
        raise DecodeError(
            "Stream too short for frame {0}: need {1} bytes, have {2}".format(
                frame_index, end, len(data)
            ),
            len(data),
        )

    rows, cols = chroma_shape(width, height, subsampling)
    n_luma = width * height
    n_chroma = rows * cols

    raw = np.frombuffer(data, dtype=np.uint8, count=size, offset=start)

    y = raw[:n_luma].reshape(height, width)
    cb = raw[n_luma : n_luma + n_chroma].reshape(rows, cols)
    cr = raw[n_luma + n_chroma :].reshape(rows, cols)

    return PixelBuffer((y, cb, cr), BYTE, YCBCR, subsampling=subsampling)


def decode_yuv420_frame(
    data: bytes, width: int, height: int, frame_index: int
) -> PixelBuffer:
    """Shortcut for :func:`decode_yuv_frame` with 4:2:0 subsampling."""
    return decode_yuv_frame(data, width, height, frame_index, "420")


def load_yuv_frame(
    path: str, width: int, height: int, frame_index: int, subsampling: str = "420"
) -> PixelBuffer:
    """
    Reads a single frame from a raw YUV file without loading the whole file.
    """
    size = frame_size(width, height, subsampling)
    path = os.path.expanduser(path)

    with open(path, "rb") as f:
        f.seek(frame_index * size)
        chunk = f.read(size)

    if len(chunk) < size:
        raise DecodeError(
            "File '{0}' too short for frame {1}".format(path, frame_index),
            frame_index * size + len(chunk),
        )

    return decode_yuv_frame(chunk, width, height, 0, subsampling)


def count_file_frames(path: str, width: int, height: int, subsampling: str = "420"):
    """Number of frames in a raw YUV file."""
    return count_frames(
        os.path.getsize(os.path.expanduser(path)), width, height, subsampling
    )
