# -*- coding: utf-8 -*-
"""
(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import shutil
import tempfile
import unittest
import configparser as cp

from setpsnr.config.user import UserConfig

DEFAULTS = [
    ("Evaluation", {"workers": 4, "clamp": False, "channel_mode": "rgb"}),
    ("Simulation", {"lambda": 1.0}),
]


class TestUserConfig(unittest.TestCase):
    def setUp(self):
        # absolute subfolders are used as is
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def new_config(self, version="1.0.0", **kwargs):
        return UserConfig(
            "test", DEFAULTS, version=version, subfolder=self.tmpdir, **kwargs
        )

    def test_defaults(self):
        conf = self.new_config()

        self.assertEqual(conf.get("Evaluation", "workers"), 4)
        self.assertIs(conf.get("Evaluation", "clamp"), False)
        self.assertEqual(conf.get("Evaluation", "channel_mode"), "rgb")
        self.assertEqual(conf.get("Simulation", "lambda"), 1.0)
        self.assertTrue(os.path.isfile(os.path.join(self.tmpdir, "test.ini")))

    def test_set_and_reload(self):
        conf = self.new_config()
        conf.set("Evaluation", "workers", "8")
        conf.set("Evaluation", "clamp", True)
        conf.set("Evaluation", "channel_mode", "y_bt601_full")
        conf.set("Simulation", "lambda", 3)

        self.assertEqual(conf.get("Evaluation", "workers"), 8)
        self.assertEqual(conf.get("Simulation", "lambda"), 3.0)

        reloaded = self.new_config()
        self.assertEqual(reloaded.get("Evaluation", "workers"), 8)
        self.assertIs(reloaded.get("Evaluation", "clamp"), True)
        self.assertEqual(reloaded.get("Evaluation", "channel_mode"), "y_bt601_full")

    def test_bad_values(self):
        conf = self.new_config()

        with self.assertRaises(ValueError):
            conf.set("Evaluation", "clamp", "yes")
        with self.assertRaises(ValueError):
            conf.set("Evaluation", "workers", "many")

    def test_missing_options(self):
        conf = self.new_config()

        self.assertEqual(conf.get("Evaluation", "colour", default=None), None)
        with self.assertRaises(cp.NoOptionError):
            conf.get("Evaluation", "colour")
        with self.assertRaises(cp.NoSectionError):
            conf.get("Report", "format")

    def test_version_change(self):
        conf = self.new_config()
        conf.set("Evaluation", "workers", 2)

        self.assertEqual(self.new_config("1.3.0").get("Evaluation", "workers"), 2)
        self.assertEqual(self.new_config("2.0.0").get("Evaluation", "workers"), 4)

        with self.assertRaises(ValueError):
            self.new_config("1.0")

    def test_reset_and_cleanup(self):
        conf = self.new_config()
        conf.set("Evaluation", "workers", 2)
        conf.reset_to_defaults()
        self.assertEqual(self.new_config().get("Evaluation", "workers"), 4)

        conf.cleanup()
        self.assertFalse(os.path.exists(conf.filename()))


if __name__ == "__main__":
    unittest.main()
