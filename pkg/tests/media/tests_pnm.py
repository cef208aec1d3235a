# -*- coding: utf-8 -*-
"""
(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import shutil
import tempfile
import unittest

import numpy as np

from setpsnr.media import (
    PixelBuffer,
    DecodeError,
    decode_pnm,
    encode_pnm,
    load_pnm,
    save_pnm,
)
from setpsnr.media.buffers import BYTE, UNIT_FLOAT, GRAY, RGB, YCBCR


P5_2X2 = b"P5\n2 2\n255\n" + bytes([0, 128, 255, 64])


class TestDecodePnm(unittest.TestCase):
    def test_binary_gray(self):
        buf = decode_pnm(P5_2X2)

        self.assertEqual(buf.geometry, "2x2x1")
        self.assertEqual(buf.sample_range, BYTE)
        self.assertEqual(buf.colorspace, GRAY)
        np.testing.assert_array_equal(buf.planes[0], [[0, 128], [255, 64]])

    def test_binary_rgb(self):
        data = b"P6\n2 1\n255\n" + bytes([255, 0, 0, 255, 0, 0])
        buf = decode_pnm(data)

        self.assertEqual(buf.colorspace, RGB)
        self.assertEqual(buf.channels, 3)
        np.testing.assert_array_equal(buf.planes[0], [[255, 255]])
        np.testing.assert_array_equal(buf.planes[1], [[0, 0]])
        np.testing.assert_array_equal(buf.planes[2], [[0, 0]])

    def test_ascii_with_comments(self):
        data = b"P2\n# created by hand\n2 1\n# maxval follows\n255\n10 20\n"
        buf = decode_pnm(data)
        np.testing.assert_array_equal(buf.planes[0], [[10, 20]])

        data = b"P3 1 1 255\n1 2 3\n"
        buf = decode_pnm(data)
        self.assertEqual([p[0, 0] for p in buf.planes], [1, 2, 3])

    def test_16bit_is_normalised(self):
        data = b"P5\n2 1\n65535\n" + b"\xff\xff\x00\x00"
        buf = decode_pnm(data)

        self.assertEqual(buf.sample_range, UNIT_FLOAT)
        self.assertEqual(buf.maxval, 65535)
        np.testing.assert_array_equal(buf.planes[0], [[1.0, 0.0]])

    def test_truncated_payload(self):
        data = b"P5\n2 2\n255\n" + bytes([1, 2, 3])
        with self.assertRaises(DecodeError) as cm:
            decode_pnm(data)
        self.assertEqual(cm.exception.offset, len(data))
        self.assertIn("offset", str(cm.exception))

    def test_truncated_ascii_payload(self):
        with self.assertRaises(DecodeError):
            decode_pnm(b"P2\n2 2\n255\n1 2 3\n")

    def test_malformed_header(self):
        with self.assertRaises(DecodeError) as cm:
            decode_pnm(b"P7\n2 2\n255\n")
        self.assertEqual(cm.exception.offset, 0)

        with self.assertRaises(DecodeError):
            decode_pnm(b"P5\n2 x\n255\n\x00\x00")

        with self.assertRaises(DecodeError):
            decode_pnm(b"P5\n1 1\n70000\n\x00\x00")

    def test_sample_above_maxval(self):
        with self.assertRaises(DecodeError):
            decode_pnm(b"P2\n1 1\n15\n16\n")

        with self.assertRaises(DecodeError):
            decode_pnm(b"P5\n2 1\n1023\n" + b"\x00\x01\x04\x00")


class TestEncodePnm(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_payload_survives_decode_encode(self):
        """
        Decoding and re-encoding a binary file must reproduce the payload bytes.
        """
        files = (
            P5_2X2,
            b"P6\n1 2\n255\n" + bytes([1, 2, 3, 250, 251, 252]),
            b"P5\n2 1\n65535\n" + b"\x01\x02\xff\xfe",
            b"P5\n2 1\n1023\n" + b"\x03\xff\x00\x10",
        )
        for data in files:
            self.assertEqual(encode_pnm(decode_pnm(data)), data)

    def test_ascii_payload_is_written_binary(self):
        buf = decode_pnm(b"P2\n3 1\n255\n7 8 9\n")
        self.assertEqual(encode_pnm(buf), b"P5\n3 1\n255\n" + bytes([7, 8, 9]))

    def test_save_and_load(self):
        path = os.path.join(self.tmpdir, "image.ppm")
        planes = np.arange(3 * 4 * 5).reshape(3, 4, 5) % 256
        buf = PixelBuffer(planes, BYTE, RGB)

        save_pnm(buf, path)
        loaded = load_pnm(path)

        self.assertEqual(loaded.geometry, "5x4x3")
        for a, b in zip(buf.planes, loaded.planes):
            np.testing.assert_array_equal(a, b)

    def test_ycbcr_rejected(self):
        planes = [np.zeros((2, 2)), np.zeros((1, 1)), np.zeros((1, 1))]
        buf = PixelBuffer(planes, BYTE, YCBCR, subsampling="420")
        with self.assertRaises(ValueError):
            encode_pnm(buf)


if __name__ == "__main__":
    unittest.main()
