# -*- coding: utf-8 -*-
"""
(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import math
import unittest

import numpy as np

from setpsnr.estimators import (
    psnr,
    psnr_bar,
    psnr_of_mean_mse,
    estimator_gap,
    psnr_std,
    apply_zero_policy,
    zero_floor,
    set_estimate,
    video_psnr,
    video_set_psnrs,
    UndefinedEstimateError,
    MEAN_FRAME_PSNR,
    PSNR_OF_MEAN_FRAME_MSE,
    BY_FRAMES,
    BY_VIDEOS,
)
from setpsnr.mse import VideoMse


def video(video_id, mses, peak=1.0):
    ids = ["{0}#{1}".format(video_id, i) for i in range(len(mses))]
    return VideoMse(video_id, mses, ids, 100, peak)


class TestPsnr(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(psnr(0.01), 20.0, places=12)
        self.assertAlmostEqual(psnr(256, 255), 24.0484, places=4)
        self.assertEqual(psnr(0.0), math.inf)
        self.assertEqual(psnr(0.0, 255), math.inf)

    def test_domain(self):
        with self.assertRaises(ValueError):
            psnr(-1e-3)
        with self.assertRaises(ValueError):
            psnr(0.1, 0)


class TestSetEstimators(unittest.TestCase):
    def test_examples(self):
        mses = [0.01, 0.0001]
        self.assertAlmostEqual(psnr_bar(mses), 30.0, places=9)
        self.assertAlmostEqual(psnr_of_mean_mse(mses), 22.9671, places=4)
        self.assertAlmostEqual(estimator_gap(mses), 7.0329, places=4)
        self.assertAlmostEqual(
            estimator_gap(mses), 10 * math.log10(0.00505 / 0.001), places=9
        )

    def test_equal_values(self):
        c = [0.004, 0.004, 0.004]
        self.assertAlmostEqual(psnr_bar(c), psnr(0.004), places=12)
        self.assertAlmostEqual(psnr_of_mean_mse(c), psnr(0.004), places=12)
        self.assertEqual(estimator_gap(c), 0.0)

    def test_single_item(self):
        for x in (1e-8, 0.37, 255.0 ** 2):
            est = set_estimate([x], peak=255.0)
            self.assertAlmostEqual(est.psnr_bar, psnr(x, 255.0), places=12)
            self.assertAlmostEqual(est.psnr_of_mean_mse, psnr(x, 255.0), places=12)
            self.assertEqual(est.gap_db, 0.0)
            self.assertIsNone(est.mse_std)
            self.assertIsNone(est.mse_cv)
            self.assertIsNone(est.psnr_std)

    def test_zero_mse(self):
        with self.assertRaises(UndefinedEstimateError) as cm:
            psnr_bar([0.01, 0.0], item_ids=["a", "b"])
        self.assertEqual(cm.exception.item_ids, ["b"])

        with self.assertRaises(UndefinedEstimateError):
            estimator_gap([0.0, 0.1])

        floored, warnings = apply_zero_policy([0.01, 0.0], 255.0, "floor", ["a", "b"])
        self.assertEqual(floored[1], 255.0 ** 2 * 2.0 ** -52)
        self.assertEqual(floored[1], zero_floor(255.0))
        self.assertEqual(len(warnings), 1)
        self.assertIn("b", warnings[0])

        value = psnr_bar([0.01, 0.0], zero_mse="floor")
        self.assertTrue(math.isfinite(value))
        self.assertGreater(value, 20.0)

        with self.assertRaises(ValueError):
            apply_zero_policy([0.0], zero_mse="ignore")

    def test_all_zero(self):
        with self.assertLogs("setpsnr.estimators", level="WARNING"):
            self.assertEqual(psnr_of_mean_mse([0.0, 0.0]), math.inf)

    def test_invalid_lists(self):
        for mses in ([], [0.1, -0.1], [0.1, math.nan], [math.inf]):
            with self.assertRaises(ValueError):
                psnr_of_mean_mse(mses)

    def test_set_estimate(self):
        est = set_estimate([1.0, 3.0])
        self.assertEqual(est.n_items, 2)
        self.assertEqual(est.mse_mean, 2.0)
        self.assertAlmostEqual(est.mse_std, math.sqrt(2.0), places=12)
        self.assertAlmostEqual(est.mse_cv, math.sqrt(2.0) / 2.0, places=12)
        self.assertAlmostEqual(
            est.gap_db, est.psnr_bar - est.psnr_of_mean_mse, delta=1e-9
        )
        self.assertAlmostEqual(psnr_std([0.01, 0.0001]), math.sqrt(200.0), places=9)

        est = set_estimate([0.01, 0.0], zero_mse="floor")
        self.assertEqual(len(est.warnings), 1)
        self.assertEqual(est.mse_mean, 0.005)

    def test_all_zero_floor(self):
        with self.assertLogs("setpsnr.estimators", level="WARNING"):
            est = set_estimate([0.0, 0.0, 0.0], peak=255.0, zero_mse="floor")

        self.assertTrue(math.isfinite(est.psnr_of_mean_mse))
        self.assertEqual(est.psnr_of_mean_mse, est.psnr_bar)
        self.assertAlmostEqual(est.psnr_bar, psnr(zero_floor(255.0), 255.0), places=9)
        self.assertEqual(est.gap_db, 0.0)
        self.assertEqual(est.mse_mean, 0.0)
        self.assertEqual(len(est.warnings), 2)
        self.assertIn("floored", est.warnings[0])
        self.assertIn("all MSE values are zero", est.warnings[1])

        with self.assertRaises(UndefinedEstimateError):
            set_estimate([0.0, 0.0, 0.0])

    def test_reported_ordering(self):
        """
        Reported mean-of-PSNR is never below reported PSNR-of-mean-MSE, also for MSEs
        that differ in the last bit only.
        """
        rng = np.random.default_rng(31)

        for _ in range(5000):
            x = 10.0 ** rng.uniform(-8.0, 0.0)
            est = set_estimate([x, np.nextafter(x, 1.0), x])

            self.assertGreaterEqual(est.psnr_bar, est.psnr_of_mean_mse)
            self.assertGreaterEqual(est.gap_db, 0.0)
            if est.gap_db == 0.0:
                self.assertEqual(est.psnr_bar, est.psnr_of_mean_mse)

        for _ in range(500):
            mses = 10.0 ** rng.uniform(-8.0, 0.0, int(rng.integers(1, 100)))
            est = set_estimate(mses)
            self.assertGreaterEqual(est.psnr_bar, est.psnr_of_mean_mse)

    def test_jensen_ordering(self):
        """
        Mean-of-PSNR is never below PSNR-of-mean-MSE, and their difference equals the
        gap computed from the arithmetic and geometric means.
        """
        rng = np.random.default_rng(2021)

        for _ in range(10000):
            size = int(rng.integers(1, 1001))
            mses = 10.0 ** rng.uniform(-8.0, 0.0, size)

            bar = psnr_bar(mses)
            of_mean = psnr_of_mean_mse(mses)
            gap = estimator_gap(mses)

            self.assertGreaterEqual(bar, of_mean - 1e-12)
            self.assertAlmostEqual(bar - of_mean, gap, delta=1e-9)

    def test_exponential_gap_range(self):
        rng = np.random.default_rng(11)
        gaps = np.array([estimator_gap(rng.exponential(size=100)) for _ in range(1000)])
        inside = np.mean((gaps >= 1.0) & (gaps <= 4.0))
        self.assertGreaterEqual(inside, 0.95)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(8)
        mses = rng.exponential(0.002, 500)
        shuffled = rng.permutation(mses)

        self.assertAlmostEqual(psnr_bar(mses), psnr_bar(shuffled), places=12)
        self.assertAlmostEqual(
            psnr_of_mean_mse(mses), psnr_of_mean_mse(shuffled), places=12
        )
        self.assertAlmostEqual(estimator_gap(mses), estimator_gap(shuffled), places=12)


class TestVideoEstimators(unittest.TestCase):
    def test_single_video_options(self):
        v = video("a", [0.01, 0.0001])
        self.assertAlmostEqual(video_psnr(v, MEAN_FRAME_PSNR), 30.0, places=9)
        self.assertAlmostEqual(video_psnr(v, PSNR_OF_MEAN_FRAME_MSE), 22.9671, places=4)
        self.assertEqual(video_psnr(v), video_psnr(v, PSNR_OF_MEAN_FRAME_MSE))

        v = video("b", [0.02])
        self.assertAlmostEqual(
            video_psnr(v, MEAN_FRAME_PSNR), video_psnr(v), places=12
        )

        with self.assertRaises(UndefinedEstimateError):
            video_psnr(video("c", [0.0, 0.1]), MEAN_FRAME_PSNR)
        with self.assertRaises(ValueError):
            video_psnr(v, "median")

    def test_video_set_example(self):
        est = video_set_psnrs([video("a", [0.01, 0.01]), video("b", [0.0001, 0.0001])])

        self.assertAlmostEqual(est.psnr1, 30.0, places=9)
        self.assertAlmostEqual(est.psnr2, 30.0, places=9)
        self.assertAlmostEqual(est.psnr3, 22.9671, places=4)
        self.assertEqual(est.frame_counts, [2, 2])
        self.assertEqual(est.warnings, [])

    def test_single_video_set(self):
        est = video_set_psnrs([video("a", [0.01, 0.002, 0.3])])
        self.assertAlmostEqual(est.psnr2, est.psnr3, places=12)

    def test_constant_set(self):
        est = video_set_psnrs([video("a", [0.02] * 3), video("b", [0.02] * 3)])
        for value in (est.psnr1, est.psnr2, est.psnr3):
            self.assertAlmostEqual(value, psnr(0.02), places=12)

    def test_ordering(self):
        """
        With equal frame counts, PSNR-1 >= PSNR-2 >= PSNR-3.
        """
        rng = np.random.default_rng(4)

        for _ in range(500):
            n_videos = int(rng.integers(1, 8))
            n_frames = int(rng.integers(1, 40))
            videos = [
                video(str(i), rng.exponential(10.0 ** rng.uniform(-4, 0), n_frames))
                for i in range(n_videos)
            ]
            for psnr1_weighting, psnr3_weighting in (
                (BY_FRAMES, BY_VIDEOS),
                (BY_VIDEOS, BY_FRAMES),
            ):
                est = video_set_psnrs(
                    videos,
                    psnr1_weighting=psnr1_weighting,
                    psnr3_weighting=psnr3_weighting,
                )
                self.assertGreaterEqual(est.psnr1, est.psnr2)
                self.assertGreaterEqual(est.psnr2, est.psnr3)

    def test_ordering_near_equal(self):
        rng = np.random.default_rng(19)

        for _ in range(2000):
            n_videos = int(rng.integers(2, 6))
            n_frames = int(rng.integers(1, 10))
            base = 10.0 ** rng.uniform(-4, 0)
            videos = [
                video(str(i), base * (1.0 + 1e-15 * rng.integers(0, 3, n_frames)))
                for i in range(n_videos)
            ]
            est = video_set_psnrs(videos)

            self.assertGreaterEqual(est.psnr1, est.psnr2)
            self.assertGreaterEqual(est.psnr2, est.psnr3)

    def test_ordering_unequal_frame_counts(self):
        """
        Averaging per-video PSNRs and per-video MSEs keeps the ordering for any frame
        counts.
        """
        rng = np.random.default_rng(23)

        for _ in range(500):
            videos = [
                video(str(i), rng.exponential(0.01, int(rng.integers(1, 20))))
                for i in range(int(rng.integers(1, 6)))
            ]
            est = video_set_psnrs(videos, psnr1_weighting=BY_VIDEOS)

            self.assertGreaterEqual(est.psnr1, est.psnr2)
            self.assertGreaterEqual(est.psnr2, est.psnr3)

    def test_unequal_frame_counts(self):
        a = video("a", [0.01, 0.0001])
        b = video("b", [0.01])

        est = video_set_psnrs([a, b])
        self.assertEqual(len(est.warnings), 1)
        self.assertIn("unequal frame counts", est.warnings[0])
        self.assertAlmostEqual(est.psnr1, psnr_bar([0.01, 0.0001, 0.01]), places=12)
        self.assertAlmostEqual(est.psnr3, psnr_of_mean_mse([0.00505, 0.01]), places=12)
        self.assertGreaterEqual(est.psnr2, est.psnr3)

        est = video_set_psnrs(
            [a, b], psnr1_weighting=BY_VIDEOS, psnr3_weighting=BY_FRAMES
        )
        self.assertAlmostEqual(est.psnr1, (30.0 + 20.0) / 2, places=9)
        self.assertAlmostEqual(
            est.psnr3, psnr_of_mean_mse([0.01, 0.0001, 0.01]), places=12
        )

    def test_errors(self):
        with self.assertRaises(ValueError):
            video_set_psnrs([])
        with self.assertRaises(ValueError):
            video_set_psnrs([video("a", [0.1])], psnr1_weighting="pixels")
        with self.assertRaises(UndefinedEstimateError):
            video_set_psnrs([video("a", [0.1, 0.0]), video("b", [0.1, 0.1])])

        est = video_set_psnrs(
            [video("a", [0.1, 0.0]), video("b", [0.1, 0.1])], zero_mse="floor"
        )
        self.assertTrue(any("floored" in w for w in est.warnings))

    def test_floor_warnings_by_videos(self):
        videos = [video("a", [0.1, 0.0]), video("b", [0.1, 0.1])]

        for weighting in (BY_FRAMES, BY_VIDEOS):
            est = video_set_psnrs(videos, zero_mse="floor", psnr1_weighting=weighting)
            floored = [w for w in est.warnings if "floored" in w]
            self.assertEqual(len(floored), 1)
            self.assertIn("a#1", floored[0])
            self.assertTrue(math.isfinite(est.psnr1))

    def test_all_zero_floor(self):
        videos = [video("a", [0.0, 0.0]), video("b", [0.0, 0.0])]
        est = video_set_psnrs(videos, zero_mse="floor")

        for value in (est.psnr1, est.psnr2, est.psnr3):
            self.assertTrue(math.isfinite(value))
            self.assertAlmostEqual(value, psnr(zero_floor(1.0)), places=9)
        self.assertGreaterEqual(est.psnr1, est.psnr2)
        self.assertGreaterEqual(est.psnr2, est.psnr3)


if __name__ == "__main__":
    unittest.main()
