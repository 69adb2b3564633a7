#!/usr/bin/env python3

# std
import unittest

# 3rd party
import numpy as np

# ours
from widesense.errors import CombinatorialGuardError
from widesense.fusion.matrix import MeasurementMatrix
from widesense.fusion.oracle import oracle_recover, support_count
from widesense.util.testing import MyTestCase


class TestOracle(MyTestCase):
    def test_single_entry(self):
        rng = np.random.default_rng(0)
        for seed in range(100):
            L, K = 9, 20
            A = MeasurementMatrix.from_entries(rng.choice([-1.0, 1.0], (K, L)))
            x = np.zeros(L)
            x[int(rng.integers(L))] = rng.uniform(0.5, 2.0)
            result = oracle_recover(A, (A.entries @ x).real, 1)
            with self.subTest(seed=seed):
                self.assertTrue(np.array_equal(result.x_hat > 0, x > 0))
                self.assertAlmostEqual(result.report.residual_norm, 0, delta=1e-9)

    def test_s_max_zero(self):
        A = MeasurementMatrix.from_entries(np.eye(3))
        y = np.array([1.0, 2.0, 2.0])
        result = oracle_recover(A, y, 0)
        self.assertAllClose(result.x_hat, np.zeros(3))
        self.assertAlmostEqual(result.report.residual_norm, 3.0)
        self.assertEqual(result.report.iterations, 0)

    def test_tie_break(self):
        # Two identical columns: same residual and l1, lower position wins
        A = MeasurementMatrix.from_entries([[1.0, 1.0, 0.0]])
        result = oracle_recover(A, [2.0], 1)
        self.assertAllClose(result.x_hat, [2.0, 0.0, 0.0])

    def test_prefers_small_l1(self):
        A = MeasurementMatrix.from_entries([[1.0, 2.0]])
        result = oracle_recover(A, [2.0], 1)
        self.assertAllClose(result.x_hat, [0.0, 1.0])

    def test_iterations(self):
        A = MeasurementMatrix.from_entries(np.eye(5))
        result = oracle_recover(A, np.ones(5), 2)
        self.assertEqual(result.report.iterations, support_count(5, 2))
        self.assertEqual(support_count(5, 2), 15)

    def test_guard(self):
        A = MeasurementMatrix.from_entries(np.zeros((2, 201)))
        with self.assertRaises(CombinatorialGuardError):
            oracle_recover(A, np.zeros(2), 4)


if __name__ == "__main__":
    unittest.main()
