# -*- coding: utf-8 -*-
"""
Plain text MSE lists: one non-negative MSE per line with an optional second column
holding a video id. Empty lines and lines starting with '#' are ignored.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import math
from typing import List, Optional, Tuple

from setpsnr.media.buffers import MediaError


def parse_mse_list(text: str) -> List[Tuple[float, Optional[str]]]:
    """
    Parses an MSE list.

    :param text: File content.
    :returns: List of ``(mse, video_id)`` tuples in file order. ``video_id`` is
        ``None`` when the line has a single column.
    :raises: :class:`MediaError` for malformed lines or negative values.
    """
    entries = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue

        fields = line.replace(",", " ").split()
        if len(fields) > 2:
            raise MediaError("Line {}: expected at most two columns.".format(lineno))

        try:
            value = float(fields[0])
        except ValueError:
            raise MediaError("Line {0}: invalid MSE {1!r}.".format(lineno, fields[0]))

        if not math.isfinite(value) or value < 0:
            raise MediaError(
                "Line {0}: MSE must be finite and non-negative, got {1}.".format(
                    lineno, value
                )
            )

        entries.append((value, fields[1] if len(fields) == 2 else None))

    if not entries:
        raise MediaError("MSE list is empty.")

    return entries


def read_mse_list(path: str) -> List[Tuple[float, Optional[str]]]:
    """Reads and parses the MSE list at ``path``."""
    with open(os.path.expanduser(path), "r", encoding="utf-8") as f:
        return parse_mse_list(f.read())
