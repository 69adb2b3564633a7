#!/usr/bin/env python3

# std
import math
import unittest

# 3rd
import numpy as np
import pytest

# ours
from widesense.harness.config import (
    ExperimentConfig,
    FadingSettings,
    LambdaGridSettings,
    NoiseSettings,
    SpectrumSettings,
)
from widesense.harness.trial import default_threshold, run_trial
from widesense.util.testing import MyTestCase


def small_config(**kwargs):
    settings = dict(
        spectrum=SpectrumSettings(31, 1),
        pu_count=1,
        k_values=(12,),
        trials=3,
        noise=NoiseSettings(snr_db=None, sigma_w=0.0),
    )
    settings.update(kwargs)
    return ExperimentConfig(**settings).validate()


class TestRunTrial(MyTestCase):
    def test_deterministic(self):
        cfg = small_config(noise=NoiseSettings(snr_db=10.0))
        a = run_trial(cfg, 1234)
        b = run_trial(cfg, 1234)
        self.assertTrue(np.array_equal(a.x_hat, b.x_hat))
        self.assertTrue(np.array_equal(a.x_true, b.x_true))
        self.assertEqual(a.outcome, b.outcome)
        self.assertGreater(a.sigma_w, 0)

    def test_record(self):
        cfg = small_config()
        record = run_trial(cfg, 7, K=10, threshold=0.3)
        self.assertEqual(record.K, 10)
        self.assertEqual(record.trial_seed, 7)
        self.assertEqual(record.threshold, 0.3)
        self.assertEqual(record.x_hat.shape, (31,))
        self.assertEqual(int(record.d_true.sum()), 2)
        self.assertTrue(np.all(record.x_hat >= 0))
        self.assertEqual(record.sigma_w, 0.0)
        self.assertEqual(
            record.outcome.busy_count + record.outcome.idle_count, 31
        )

    def test_noiseless_recovery(self):
        cfg = small_config()
        exact = 0
        for seed in range(10):
            record = run_trial(cfg, seed)
            if record.outcome.mse <= 1e-4:
                exact += 1
        self.assertGreaterEqual(exact, 9)

    def test_no_users(self):
        cfg = small_config(pu_count=0, noise=NoiseSettings(snr_db=10.0))
        for threshold in [1e-9, 0.1]:
            record = run_trial(cfg, 5, threshold=threshold)
            self.assertAllClose(record.x_hat, np.zeros(31), rtol=0, atol=0)
            self.assertEqual(record.outcome.pf, 0.0)
            self.assertTrue(math.isnan(record.outcome.pd))
            self.assertTrue(math.isnan(record.outcome.mse))

    def test_nodes_share_environment(self):
        cfg = small_config()
        a = run_trial(cfg, 3, K=6)
        b = run_trial(cfg, 3, K=12)
        self.assertTrue(np.array_equal(a.x_true, b.x_true))

    def test_magnitude_mode(self):
        cfg = small_config(
            measurement_mode="magnitude",
            spectral_bins=16,
            noise=NoiseSettings(snr_db=20.0),
        )
        record = run_trial(cfg, 11)
        self.assertTrue(np.all(np.isfinite(record.x_hat)))
        self.assertTrue(np.all(record.x_hat >= 0))

    def test_rayleigh(self):
        cfg = small_config(fading=FadingSettings("rayleigh", 1.0))
        record = run_trial(cfg, 2)
        self.assertTrue(np.all(np.isfinite(record.x_hat)))

    def test_default_threshold(self):
        self.assertEqual(default_threshold(small_config()), 0.25)
        cfg = small_config(lambda_grid=LambdaGridSettings(threshold=0.4))
        self.assertEqual(default_threshold(cfg), 0.4)
        self.assertEqual(run_trial(cfg, 1).threshold, 0.4)


@pytest.mark.slow
def test_noiseless_full_scale():
    cfg = ExperimentConfig(
        k_values=(120,), noise=NoiseSettings(snr_db=None, sigma_w=0.0)
    ).validate()
    exact = sum(run_trial(cfg, seed).outcome.mse <= 1e-4 for seed in range(5))
    assert exact >= 4


if __name__ == "__main__":
    unittest.main()
