#!/usr/bin/env python3

# std
import logging
import unittest

# 3rd party
import numpy as np

# ours
from widesense.fusion.matrix import (
    MeasurementMatrix,
    MeasurementVector,
    assemble_matrix,
)
from widesense.sampler.mixing import (
    d_coefficients,
    draw_mixing,
    fourier_coeffs,
    fourier_matrix,
)
from widesense.spectrum.config import make_config
from widesense.spectrum.environment import ChannelProfile
from widesense.util.testing import MyTestCase


class TestAssembleMatrix(MyTestCase):
    def test_factorization(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            L = 2 * int(rng.integers(1, 32)) + 1
            K = int(rng.integers(1, L + 1))
            cfg = make_config(L, 1)
            half = rng.random(cfg.L0 + 1)
            H = ChannelProfile(np.r_[half[::-1], half[1:]])
            A = assemble_matrix(int(rng.integers(10 ** 6)), K, cfg, H)
            self.assertEqual(A.shape, (K, L))
            self.assertAllClose(A.product(), A.entries, rtol=0, atol=1e-12)

    def test_rows_are_coefficients(self):
        cfg = make_config(15, 1)
        A = assemble_matrix(7, 4, cfg)
        for k in range(4):
            c = fourier_coeffs(draw_mixing(k + 1, 15, 7)).coeffs
            self.assertAllClose(A.entries[k], c, rtol=0, atol=1e-15)

    def test_per_node_seeds(self):
        cfg = make_config(7, 1)
        A = assemble_matrix([3, 4], 2, cfg)
        self.assertAllClose(
            A.entries[1], fourier_coeffs(draw_mixing(2, 7, 4)).coeffs
        )
        with self.assertRaises(ValueError):
            assemble_matrix([3, 4], 3, cfg)

    def test_zero_gain_column(self):
        cfg = make_config(7, 1)
        gains = np.ones(7)
        gains[[1, 5]] = 0
        A = assemble_matrix(1, 5, cfg, ChannelProfile(gains))
        self.assertTrue(np.all(A.entries[:, 1] == 0))
        self.assertTrue(np.all(A.entries[:, 5] == 0))

    def test_warns_if_not_compressed(self):
        cfg = make_config(3, 1)
        log = logging.getLogger("widesense-test-matrix")
        with self.assertLogs(log, level="WARNING"):
            assemble_matrix(0, 4, cfg, log=log)

    def test_rejects_no_nodes(self):
        with self.assertRaises(ValueError):
            assemble_matrix(0, 0, make_config(3, 1))


class TestMeasurementMatrix(MyTestCase):
    def test_all_ones_row(self):
        # Only the DC column survives all-ones chips
        L = 9
        F = fourier_matrix(L)
        A = MeasurementMatrix(
            entries=(np.ones((1, L)) @ F) * d_coefficients(L),
            signs=np.ones((1, L)),
            fourier=F,
            d=d_coefficients(L),
            gains=np.ones(L),
        )
        expected = np.zeros((1, L))
        expected[0, 4] = 1
        self.assertAllClose(A.product(), expected, rtol=0, atol=1e-12)

    def test_from_entries(self):
        A = MeasurementMatrix.from_entries(np.eye(3))
        self.assertFalse(A.factored)
        self.assertEqual((A.K, A.L), (3, 3))
        with self.assertRaises(ValueError):
            A.product()

    def test_realified(self):
        A = MeasurementMatrix.from_entries([[1 + 2j, 3 - 1j]])
        self.assertAllClose(A.realified(), [[1, 3], [2, -1]])

    def test_read_only(self):
        A = MeasurementMatrix.from_entries(np.eye(3))
        with self.assertRaises(ValueError):
            A.entries[0, 0] = 2

    def test_vector(self):
        y = MeasurementVector([1.0, 2.0])
        self.assertEqual(y.K, 2)
        with self.assertRaises(ValueError):
            MeasurementVector([1.0, np.nan])


if __name__ == "__main__":
    unittest.main()
