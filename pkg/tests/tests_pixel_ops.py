# -*- coding: utf-8 -*-
"""
(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import unittest

import numpy as np

from setpsnr.media import PixelBuffer
from setpsnr.media.buffers import BYTE, UNIT_FLOAT, RGB, GRAY, YCBCR
from setpsnr.pixel_ops import (
    to_luma,
    quantize,
    round_half_away,
    canonicalize,
    GeometryError,
    ChannelModeError,
    RGB_MODE,
    Y_STUDIO,
    Y_FULL,
    UINT8,
    FLOAT01,
)


def rgb(r, g, b, shape=(2, 2), sample_range=UNIT_FLOAT):
    return PixelBuffer(
        [np.full(shape, r), np.full(shape, g), np.full(shape, b)], sample_range, RGB
    )


def gray(values, sample_range=BYTE, maxval=None):
    return PixelBuffer([values], sample_range, GRAY, maxval=maxval)


class TestLuma(unittest.TestCase):
    def test_full_range(self):
        y = to_luma(rgb(1, 1, 1), Y_FULL)
        self.assertEqual(y.channels, 1)
        self.assertAlmostEqual(y.planes[0][0, 0], 1.0, places=12)

        y = to_luma(rgb(0.2, 0.2, 0.2), Y_FULL)
        self.assertAlmostEqual(y.planes[0][1, 1], 0.2, places=12)

    def test_studio_swing(self):
        white = to_luma(rgb(1, 1, 1), Y_STUDIO)
        black = to_luma(rgb(0, 0, 0), Y_STUDIO)
        self.assertAlmostEqual(white.planes[0][0, 0], 235 / 255, places=12)
        self.assertAlmostEqual(black.planes[0][0, 0], 16 / 255, places=12)

        # byte input is scaled to [0, 1] first
        white = to_luma(rgb(255, 255, 255, sample_range=BYTE), Y_STUDIO)
        self.assertAlmostEqual(white.planes[0][0, 0], 235 / 255, places=12)

    def test_single_channel_is_noop(self):
        buf = gray(np.array([[1.0, 2.0]]))
        once = to_luma(buf, Y_STUDIO)
        twice = to_luma(once, Y_STUDIO)

        np.testing.assert_array_equal(once.planes[0], buf.planes[0])
        np.testing.assert_array_equal(twice.planes[0], buf.planes[0])
        self.assertEqual(len(once.warnings), 1)

    def test_ycbcr_keeps_stored_luma(self):
        planes = [np.arange(16).reshape(4, 4), np.zeros((2, 2)), np.zeros((2, 2))]
        buf = PixelBuffer(planes, BYTE, YCBCR, subsampling="420")
        y = to_luma(buf, Y_STUDIO)
        np.testing.assert_array_equal(y.planes[0], planes[0])


class TestQuantize(unittest.TestCase):
    def test_round_half_away(self):
        values = np.array([0.5, 1.5, 2.5, -0.5, -1.5, 0.49])
        np.testing.assert_array_equal(round_half_away(values), [1, 2, 3, -1, -2, 0])

    def test_uint8(self):
        buf = PixelBuffer([[[0.5, -0.004, 1.2, 0.2]]], UNIT_FLOAT, GRAY)
        q = quantize(buf, UINT8)
        self.assertEqual(q.sample_range, BYTE)
        np.testing.assert_array_equal(q.planes[0], [[128, 0, 255, 51]])

        rng = np.random.default_rng(3)
        buf = PixelBuffer([rng.uniform(-0.2, 1.2, (16, 16))], UNIT_FLOAT, GRAY)
        q = quantize(buf, UINT8).planes[0]
        np.testing.assert_array_equal(q, np.round(q))
        self.assertTrue(q.min() >= 0 and q.max() <= 255)

    def test_float01(self):
        buf = PixelBuffer([[[1.2, -0.004, 0.3]]], UNIT_FLOAT, GRAY)
        np.testing.assert_array_equal(
            quantize(buf, FLOAT01, clamp=True).planes[0], [[1.0, 0.0, 0.3]]
        )
        np.testing.assert_array_equal(
            quantize(buf, FLOAT01).planes[0], [[1.2, -0.004, 0.3]]
        )

        q = quantize(gray(np.array([[255.0, 51.0]])), FLOAT01)
        np.testing.assert_array_equal(q.planes[0], [[1.0, 0.2]])


class TestCanonicalize(unittest.TestCase):
    def test_rgb_pair(self):
        ref = rgb(10, 20, 30, sample_range=BYTE)
        dist = rgb(11, 21, 31, sample_range=BYTE)
        pair = canonicalize(ref, dist, RGB_MODE, UINT8)

        self.assertEqual(pair.peak, 255.0)
        self.assertEqual(pair.ref_buf.channels, 3)
        self.assertEqual(pair.dist_buf.sample_range, BYTE)
        self.assertEqual(pair.pixel_count, 12)

        pair = canonicalize(ref, dist, RGB_MODE, FLOAT01)
        self.assertEqual(pair.peak, 1.0)

    def test_dimension_mismatch(self):
        with self.assertRaises(GeometryError) as cm:
            canonicalize(gray(np.zeros((1080, 1920))), gray(np.zeros((1072, 1920))))
        self.assertIn("1920x1080x1", str(cm.exception))
        self.assertIn("1920x1072x1", str(cm.exception))

        with self.assertRaises(GeometryError):
            canonicalize(rgb(0, 0, 0), gray(np.zeros((2, 2)), UNIT_FLOAT), RGB_MODE)

    def test_ycbcr_input(self):
        planes = [np.full((4, 4), 100.0), np.zeros((2, 2)), np.zeros((2, 2))]
        ref = PixelBuffer(planes, BYTE, YCBCR, subsampling="420")
        dist = PixelBuffer(
            [np.full((4, 4), 90.0)] + planes[1:], BYTE, YCBCR, subsampling="420"
        )

        pair = canonicalize(ref, dist, Y_STUDIO, UINT8)
        self.assertEqual(pair.pixel_count, 16)
        np.testing.assert_array_equal(pair.ref_buf.planes[0], planes[0])

        with self.assertRaises(ChannelModeError):
            canonicalize(ref, dist, RGB_MODE, UINT8)

    def test_16bit_input(self):
        ref = gray(np.full((2, 2), 0.5), UNIT_FLOAT, maxval=65535)
        dist = gray(np.full((2, 2), 0.25), UNIT_FLOAT, maxval=65535)

        with self.assertRaises(ChannelModeError):
            canonicalize(ref, dist, RGB_MODE, UINT8)

        pair = canonicalize(ref, dist, RGB_MODE, FLOAT01)
        self.assertEqual(pair.peak, 1.0)

    def test_luma_warning_on_gray(self):
        pair = canonicalize(gray(np.zeros((2, 2))), gray(np.ones((2, 2))), Y_STUDIO)
        self.assertTrue(any("single-channel" in w for w in pair.warnings))

    def test_unknown_mode(self):
        with self.assertRaises(ChannelModeError):
            canonicalize(rgb(0, 0, 0), rgb(0, 0, 0), "cmyk")


if __name__ == "__main__":
    unittest.main()
