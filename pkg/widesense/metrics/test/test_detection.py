#!/usr/bin/env python3

# std
import math
import unittest

# 3rd party
import numpy as np

# ours
from widesense.errors import NumericalError
from widesense.fusion.decision import decide
from widesense.metrics.detection import (
    DetectionCounts,
    TrialOutcome,
    aggregate_outcomes,
    detection_counts,
    mse,
    outcomes_frame,
)
from widesense.spectrum.environment import OccupancyPattern
from widesense.util.testing import MyTestCase


class TestMse(MyTestCase):
    def setUp(self):
        self.x = np.array([1.0, 0.0, 0.0, 0.0, 1.0])

    def test_exact(self):
        self.assertEqual(mse(self.x, self.x), 0.0)

    def test_zero_estimate(self):
        self.assertAlmostEqual(mse(np.zeros(5), self.x), 1.0)

    def test_double(self):
        self.assertAlmostEqual(mse(2 * self.x, self.x), 1.0)

    def test_zero_truth(self):
        with self.assertRaises(NumericalError):
            mse(self.x, np.zeros(5))

    def test_shape(self):
        with self.assertRaises(ValueError):
            mse(self.x, np.ones(3))


class TestDetectionCounts(MyTestCase):
    def setUp(self):
        self.truth = OccupancyPattern([1, 0, 0, 0, 1], 1)

    def test_perfect(self):
        counts = detection_counts(self.truth.flags, self.truth)
        self.assertEqual((counts.pd, counts.pf), (1.0, 0.0))

    def test_complement(self):
        counts = detection_counts(1 - self.truth.flags, self.truth)
        self.assertEqual((counts.pd, counts.pf), (0.0, 1.0))

    def test_direct_count(self):
        counts = detection_counts(decide([1, 0, 1, 0, 0], 0.5), self.truth)
        self.assertEqual(counts, DetectionCounts(1, 2, 1, 3))
        self.assertAlmostEqual(counts.pd, 1 / 2)
        self.assertAlmostEqual(counts.pf, 1 / 3)
        self.assertEqual(counts.L, 5)

    def test_undefined(self):
        counts = detection_counts([0, 1, 0], [0, 0, 0])
        self.assertTrue(math.isnan(counts.pd))
        self.assertAlmostEqual(counts.pf, 1 / 3)
        counts = detection_counts([0, 1, 0], [1, 1, 1])
        self.assertTrue(math.isnan(counts.pf))

    def test_permutation_equivariant(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            truth = (rng.random(21) < 0.3).astype(int)
            decision = (rng.random(21) < 0.3).astype(int)
            permutation = rng.permutation(21)
            self.assertEqual(
                detection_counts(decision, truth),
                detection_counts(decision[permutation], truth[permutation]),
            )

    def test_invariants(self):
        with self.assertRaises(ValueError):
            DetectionCounts(3, 2, 0, 1)
        with self.assertRaises(ValueError):
            DetectionCounts(0, 2, 2, 1)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            detection_counts([0, 1], [0, 1, 0])


class TestAggregate(MyTestCase):
    def setUp(self):
        self.outcomes = [
            TrialOutcome(2, 2, 0, 8, mse=0.1),
            TrialOutcome(1, 2, 2, 8, mse=0.3, converged=False),
            TrialOutcome(0, 0, 1, 10, mse=math.nan),
        ]

    def test_per_trial(self):
        result = aggregate_outcomes(self.outcomes)
        self.assertAlmostEqual(result["mean_mse"], 0.2)
        self.assertAlmostEqual(result["Pd"], 0.75)
        self.assertAlmostEqual(result["Pf"], (0 + 0.25 + 0.1) / 3)
        self.assertAlmostEqual(result["Pd_stderr"], 0.25)
        self.assertEqual(result["trials"], 3)
        self.assertEqual(result["not_converged"], 1)

    def test_pooled(self):
        result = aggregate_outcomes(self.outcomes, mode="pooled")
        self.assertAlmostEqual(result["Pd"], 3 / 4)
        self.assertAlmostEqual(result["Pf"], 3 / 26)
        self.assertAlmostEqual(result["Pd_stderr"], math.sqrt(0.75 * 0.25 / 4))

    def test_from_counts(self):
        outcome = TrialOutcome.from_counts(DetectionCounts(1, 2, 0, 3), 0.5)
        self.assertEqual(outcome.detect_hits, 1)
        self.assertEqual(outcome.mse, 0.5)
        self.assertTrue(outcome.converged)

    def test_frame(self):
        df = outcomes_frame(self.outcomes)
        self.assertEqual(len(df), 3)
        self.assertAlmostEqual(df["Pd"].iloc[1], 0.5)

    def test_bad(self):
        with self.assertRaises(ValueError):
            aggregate_outcomes(self.outcomes, mode="median")
        with self.assertRaises(ValueError):
            aggregate_outcomes([])


if __name__ == "__main__":
    unittest.main()
