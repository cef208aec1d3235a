# -*- coding: utf-8 -*-
"""
Reading and writing of Netpbm images: PGM (P2 / P5) and PPM (P3 / P6).

Files with maxval 255 decode to 'byte' buffers. Any other maxval (up to 65535) is
normalised to 'unit_float' by dividing by maxval; the original maxval is kept on the
buffer so that it can be written back unchanged.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
from typing import List, Tuple

import numpy as np

from setpsnr.media.buffers import (
    PixelBuffer,
    DecodeError,
    BYTE,
    UNIT_FLOAT,
    GRAY,
    RGB,
)

WHITESPACE = b" \t\n\r\v\f"

# magic number -> (channels, binary)
FORMATS = {
    b"P2": (1, False),
    b"P3": (3, False),
    b"P5": (1, True),
    b"P6": (3, True),
}

MAX_MAXVAL = 65535


# ==== header tokenizer ================================================================


class _Tokenizer:
    """Splits a PNM byte stream into whitespace separated tokens, skipping comments."""

    def __init__(self, data: bytes, pos: int = 0) -> None:
        self.data = data
        self.pos = pos

    def _skip(self) -> None:
        data = self.data
        while self.pos < len(data):
            c = data[self.pos : self.pos + 1]
            if c in WHITESPACE:
                self.pos += 1
            elif c == b"#":
                # comments run to the end of the line
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end == -1 else end + 1
            else:
                break

    def next_token(self, what: str) -> Tuple[bytes, int]:
        self._skip()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1] not in WHITESPACE:
            self.pos += 1
        if start == self.pos:
            raise DecodeError("Unexpected end of data while reading %s" % what, start)
        return data[start : self.pos], start

    def next_int(self, what: str) -> int:
        token, offset = self.next_token(what)
        try:
            return int(token)
        except ValueError:
            raise DecodeError(
                "Invalid {0} {1!r}".format(what, token.decode("ascii", "replace")),
                offset,
            )


def read_pnm_header(data: bytes) -> Tuple[bytes, int, int, int, int]:
    """
    Parses the header of a PNM image.

    :param data: Raw file content.
    :returns: ``(magic, width, height, maxval, offset)`` where ``offset`` is the
        index of the first payload byte.
    :raises: :class:`DecodeError` for malformed headers and unsupported formats.
    """
    magic = data[:2]
    if magic not in FORMATS:
        raise DecodeError(
            "Unsupported PNM magic number {!r}".format(
                magic.decode("ascii", "replace")
            ),
            0,
        )

    tokens = _Tokenizer(data, 2)
    width = tokens.next_int("width")
    height = tokens.next_int("height")
    maxval_offset = tokens.pos
    maxval = tokens.next_int("maxval")

    if width <= 0 or height <= 0:
        raise DecodeError("Invalid image size {0}x{1}".format(width, height), 2)
    if not 0 < maxval <= MAX_MAXVAL:
        raise DecodeError("Unsupported maxval {}".format(maxval), maxval_offset)

    # a single whitespace byte separates the header from a binary payload
    if tokens.pos >= len(data):
        raise DecodeError("Missing payload", tokens.pos)

    return magic, width, height, maxval, tokens.pos + 1


# ==== decoding ========================================================================


def decode_pnm(data: bytes) -> PixelBuffer:
    """
    Decodes a binary or ASCII PGM / PPM image.

    :param data: Raw file content.
    :returns: Decoded :class:`PixelBuffer`. Planes are returned in R, G, B order for
        colour images.
    :raises: :class:`DecodeError` naming the byte offset of the problem.
    """
    data = bytes(data)
    magic, width, height, maxval, offset = read_pnm_header(data)
    channels, binary = FORMATS[magic]

    n_samples = width * height * channels

    if binary:
        samples = _read_binary_payload(data, offset, n_samples, maxval)
    else:
        samples = _read_ascii_payload(data, offset - 1, n_samples, maxval)

    pixels = samples.reshape(height, width, channels).astype(np.float64)
    planes = [pixels[:, :, c] for c in range(channels)]

    if maxval == 255:
        return PixelBuffer(planes, BYTE, RGB if channels == 3 else GRAY)
    else:
        planes = [p / maxval for p in planes]
        return PixelBuffer(
            planes, UNIT_FLOAT, RGB if channels == 3 else GRAY, maxval=maxval
        )


def _read_binary_payload(data: bytes, offset: int, n_samples: int, maxval: int):

    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    n_bytes = n_samples * dtype.itemsize

    if len(data) - offset < n_bytes:
        raise DecodeError(
            "Truncated payload: expected {0} bytes, got {1}".format(
                n_bytes, len(data) - offset
            ),
            len(data),
        )

    samples = np.frombuffer(data, dtype=dtype, count=n_samples, offset=offset)

    if maxval not in (255, MAX_MAXVAL) and samples.max(initial=0) > maxval:
        index = int(np.argmax(samples > maxval))
        raise DecodeError(
            "Sample value exceeds maxval {}".format(maxval),
            offset + index * dtype.itemsize,
        )

    return samples


def _read_ascii_payload(data: bytes, pos: int, n_samples: int, maxval: int):

    tokens = _Tokenizer(data, pos)
    values: List[int] = []

    for i in range(n_samples):
        try:
            token, token_offset = tokens.next_token("sample")
        except DecodeError as exc:
            raise DecodeError(
                "Truncated payload: expected {0} samples, got {1}".format(n_samples, i),
                exc.offset,
            )
        try:
            value = int(token)
        except ValueError:
            raise DecodeError("Invalid sample {!r}".format(token), token_offset)
        if not 0 <= value <= maxval:
            raise DecodeError(
                "Sample value {0} outside [0, {1}]".format(value, maxval), token_offset
            )
        values.append(value)

    return np.array(values, dtype=np.uint16)


def load_pnm(path: str) -> PixelBuffer:
    """Reads and decodes the PNM file at ``path``."""
    with open(os.path.expanduser(path), "rb") as f:
        return decode_pnm(f.read())


# ==== encoding ========================================================================


def encode_pnm(buf: PixelBuffer) -> bytes:
    """
    Encodes a buffer as binary PGM (1 channel) or PPM (RGB).

    'byte' buffers are written with maxval 255. 'unit_float' buffers are written with
    their original maxval, or 65535 if they were not decoded from a PNM file.

    :param buf: Buffer to encode.
    :returns: File content.
    """
    if buf.channels == 3 and buf.colorspace != RGB:
        raise ValueError("Only RGB or single channel buffers can be saved as PNM.")

    if buf.sample_range == BYTE:
        maxval = 255
        scaled = np.stack(buf.planes, axis=-1)
    else:
        maxval = buf.maxval or MAX_MAXVAL
        scaled = np.rint(np.stack(buf.planes, axis=-1) * maxval)

    dtype = ">u2" if maxval > 255 else "u1"
    payload = np.clip(scaled, 0, maxval).astype(dtype).tobytes()

    magic = b"P6" if buf.channels == 3 else b"P5"
    header = b"%s\n%d %d\n%d\n" % (magic, buf.width, buf.height, maxval)

    return header + payload


def save_pnm(buf: PixelBuffer, path: str) -> None:
    """Encodes ``buf`` with :func:`encode_pnm` and writes it to ``path``."""
    with open(os.path.expanduser(path), "wb") as f:
        f.write(encode_pnm(buf))
