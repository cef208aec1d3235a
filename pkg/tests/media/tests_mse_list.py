# -*- coding: utf-8 -*-
"""
(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import shutil
import tempfile
import unittest

from setpsnr.media import MediaError, parse_mse_list, read_mse_list


class TestMseList(unittest.TestCase):
    def test_parse(self):
        text = "# published per-image MSEs\n0.01\n\n1e-4\n  0.002037  \n"
        self.assertEqual(
            parse_mse_list(text), [(0.01, None), (0.0001, None), (0.002037, None)]
        )

    def test_video_column(self):
        text = "0.01 beauty\n0.03,beauty\n0.0001\tjockey\n"
        self.assertEqual(
            parse_mse_list(text),
            [(0.01, "beauty"), (0.03, "beauty"), (0.0001, "jockey")],
        )

    def test_errors(self):
        for text in ("", "# nothing\n", "-0.1\n", "abc\n", "0.1 a b\n", "inf\n"):
            with self.assertRaises(MediaError, msg=repr(text)):
                parse_mse_list(text)

    def test_zero_is_allowed(self):
        self.assertEqual(parse_mse_list("0\n"), [(0.0, None)])

    def test_read(self):
        tmpdir = tempfile.mkdtemp()
        try:
            path = os.path.join(tmpdir, "mses.txt")
            with open(path, "w") as f:
                f.write("1.5\n2.5\n")
            self.assertEqual(read_mse_list(path), [(1.5, None), (2.5, None)])
        finally:
            shutil.rmtree(tmpdir)


if __name__ == "__main__":
    unittest.main()
