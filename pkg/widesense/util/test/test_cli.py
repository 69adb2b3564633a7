#!/usr/bin/env python3

# std
import pathlib
import tempfile
import unittest
from unittest import mock

# ours
from widesense.util.cli import handle_overwrite, yn_prompt
from widesense.util.log import get_logger


class TestHandleOverwrite(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.existing = pathlib.Path(self.tmpdir.name) / "exists.csv"
        self.existing.write_text("x\n")
        self.missing = pathlib.Path(self.tmpdir.name) / "missing.csv"
        self.log = get_logger("TestHandleOverwrite")

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_nothing_to_overwrite(self):
        for behavior in ["ask", "overwrite", "raise"]:
            self.assertTrue(handle_overwrite([self.missing], behavior, self.log))

    def test_overwrite(self):
        self.assertTrue(
            handle_overwrite([self.existing], "overwrite", self.log)
        )

    def test_raise(self):
        with self.assertRaises(FileExistsError):
            handle_overwrite([self.existing, self.missing], "raise", self.log)

    def test_ask(self):
        with mock.patch("builtins.input", return_value="n"):
            self.assertFalse(handle_overwrite([self.existing], "ask", self.log))
        with mock.patch("builtins.input", return_value="y"):
            self.assertTrue(handle_overwrite([self.existing], "ask", self.log))

    def test_unknown(self):
        with self.assertRaises(ValueError):
            handle_overwrite([self.missing], "sometimes", self.log)


class TestPrompt(unittest.TestCase):
    def test_retry(self):
        with mock.patch("builtins.input", side_effect=["perhaps", "yes"]):
            self.assertTrue(yn_prompt("Continue?"))


if __name__ == "__main__":
    unittest.main()
