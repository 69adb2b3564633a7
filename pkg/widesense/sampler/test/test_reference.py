#!/usr/bin/env python3

# std
import unittest

# 3rd party
import numpy as np
import pytest

# ours
from widesense.errors import ConfigError
from widesense.sampler.mixing import MixingSequence, draw_mixing
from widesense.sampler.reference import (
    hold_response,
    selftest_aliasing,
    timedomain_reference,
)
from widesense.spectrum.config import make_config
from widesense.spectrum.environment import (
    OccupancyPattern,
    SubbandLevels,
    draw_levels,
    draw_occupancy,
)
from widesense.util.seeding import trial_seed
from widesense.util.testing import MyTestCase


class TestHoldResponse(MyTestCase):
    def test_dc(self):
        self.assertAllClose(hold_response(0, 64), 1)

    def test_converges(self):
        self.assertLess(abs(hold_response(3, 10 ** 6) - 1), 1e-5)

    def test_conjugate_symmetric(self):
        l = np.arange(-7, 8)
        self.assertAllClose(hold_response(-l, 105), np.conj(hold_response(l, 105)))


class TestTimedomainReference(MyTestCase):
    def setUp(self):
        self.cfg = make_config(15, 1)
        rng = np.random.default_rng(3)
        self.occupancy = draw_occupancy(self.cfg, 2, rng)
        self.levels = draw_levels(self.occupancy, 0.5, 2.0, rng)

    def test_random_chips(self):
        seq = draw_mixing(1, 15, 11)
        check = timedomain_reference(
            self.cfg, self.occupancy, self.levels, seq, oversample=64
        )
        self.assertLessEqual(check.rel_error, 1e-6)
        self.assertEqual(check.measured_spectrum.shape, (9,))
        self.assertGreater(np.linalg.norm(check.model_spectrum), 0)
        self.assertGreater(check.hold_deviation, 0)

    def test_all_ones_no_aliasing(self):
        seq = MixingSequence(0, np.ones(15))
        occupancy = OccupancyPattern(np.zeros(15), 0)
        levels = SubbandLevels(np.r_[np.zeros(7), 1.0, np.zeros(7)])
        with self.assertRaises(ValueError):
            # a DC level is not supported on an empty occupancy
            timedomain_reference(self.cfg, occupancy, levels, seq)
        check = timedomain_reference(
            self.cfg, self.occupancy, self.levels, seq, oversample=8
        )
        # only the idle DC subband passes the low-pass filter
        self.assertLessEqual(check.rel_error, 1e-9)
        self.assertAllClose(check.measured_spectrum, np.zeros(9), atol=1e-9)

    def test_zero_signal(self):
        occupancy = OccupancyPattern(np.zeros(15), 0)
        check = timedomain_reference(
            self.cfg,
            occupancy,
            SubbandLevels(np.zeros(15)),
            draw_mixing(1, 15, 0),
        )
        self.assertEqual(check.rel_error, 0.0)

    def test_rejects_grid(self):
        seq = draw_mixing(1, 15, 0)
        for kwargs in [{"oversample": 1}, {"oversample": 2.5}, {"periods": 4}]:
            with self.subTest(**kwargs):
                with self.assertRaises(ConfigError):
                    timedomain_reference(
                        self.cfg, self.occupancy, self.levels, seq, **kwargs
                    )

    def test_rejects_length(self):
        with self.assertRaises(ValueError):
            timedomain_reference(
                self.cfg, self.occupancy, self.levels, draw_mixing(1, 13, 0)
            )


class TestSelftest(MyTestCase):
    def test_few_seeds(self):
        df = selftest_aliasing(L=15, J=2, oversample=16, seeds=5)
        self.assertEqual(list(df.columns), ["seed", "rel_error", "hold_deviation"])
        self.assertEqual(len(df), 5)
        self.assertLessEqual(df["rel_error"].max(), 1e-6)

    def test_explicit_seeds(self):
        df = selftest_aliasing(L=7, J=1, oversample=4, seeds=[3, 8])
        self.assertEqual(list(df["seed"]), [3, 8])

    def test_master_seed(self):
        df = selftest_aliasing(L=7, J=1, oversample=4, seeds=3, master_seed=5)
        self.assertEqual(list(df["seed"]), [trial_seed(5, i) for i in range(3)])
        other = selftest_aliasing(L=7, J=1, oversample=4, seeds=3)
        self.assertFalse(set(df["seed"]) & set(other["seed"]))


@pytest.mark.slow
def test_selftest_acceptance():
    df = selftest_aliasing(L=15, J=2, oversample=64, seeds=100)
    assert len(df) == 100
    assert df["rel_error"].max() <= 1e-6


if __name__ == "__main__":
    unittest.main()
