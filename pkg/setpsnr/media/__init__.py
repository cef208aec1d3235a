# -*- coding: utf-8 -*-
from .buffers import PixelBuffer, MediaError, DecodeError, ManifestError
from .pnm import decode_pnm, encode_pnm, load_pnm, save_pnm
from .yuv import decode_yuv_frame, decode_yuv420_frame, load_yuv_frame
from .manifest import (
    Manifest,
    ManifestItem,
    load_manifest,
    dump_manifest,
    read_manifest,
)
from .mse_list import parse_mse_list, read_mse_list
