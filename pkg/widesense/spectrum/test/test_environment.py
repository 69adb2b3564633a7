#!/usr/bin/env python3

# std
import math
import unittest

# 3rd party
import numpy as np

# ours
from widesense.errors import ConfigError
from widesense.spectrum.config import make_config
from widesense.spectrum.environment import (
    OccupancyPattern,
    SubbandLevels,
    ChannelProfile,
    NoiseModel,
    SubbandSpectra,
    draw_occupancy,
    draw_levels,
    draw_channel,
    draw_subband_spectra,
)
from widesense.util.testing import MyTestCase


class TestOccupancy(MyTestCase):
    def test_default_experiment(self):
        cfg = make_config(6e9, 30e6)
        occ = draw_occupancy(cfg, 15, np.random.default_rng(0))
        self.assertEqual(occ.flags.sum(), 30)
        self.assertAlmostEqual(occ.occupation_ratio, 30 / 201)
        self.assertAlmostEqual(occ.occupied_bandwidth_hz(cfg), 900e6)

    def test_empty(self):
        cfg = make_config(6e9, 30e6)
        occ = draw_occupancy(cfg, 0, np.random.default_rng(0))
        self.assertEqual(occ.flags.sum(), 0)

    def test_forced(self):
        cfg = make_config(5, 1)
        occ = draw_occupancy(cfg, 2, np.random.default_rng(3))
        self.assertEqual(list(occ.flags), [1, 1, 0, 1, 1])
        self.assertEqual(list(occ.busy_indices()), [2, 1, -1, -2])

    def test_too_many(self):
        cfg = make_config(5, 1)
        with self.assertRaises(ConfigError):
            draw_occupancy(cfg, 3, np.random.default_rng(0))

    def test_symmetry_and_sparsity(self):
        cfg = make_config(31, 1)
        rng = np.random.default_rng(42)
        for _ in range(1000):
            J = int(rng.integers(0, cfg.L0 + 1))
            occ = draw_occupancy(cfg, J, rng)
            self.assertTrue(np.array_equal(occ.flags, occ.flags[::-1]))
            self.assertEqual(occ.flags[cfg.L0], 0)
            self.assertEqual(occ.flags.sum(), 2 * J)

    def test_determinism(self):
        cfg = make_config(6e9, 30e6)
        a = draw_occupancy(cfg, 15, np.random.default_rng(7))
        b = draw_occupancy(cfg, 15, np.random.default_rng(7))
        self.assertEqual(a.flags.tobytes(), b.flags.tobytes())

    def test_validation(self):
        with self.assertRaises(ValueError):
            OccupancyPattern([1, 0, 0], 1)
        with self.assertRaises(ValueError):
            OccupancyPattern([0, 1, 0], 0)
        with self.assertRaises(ValueError):
            OccupancyPattern([1, 0, 1], 2)

    def test_read_only(self):
        occ = OccupancyPattern([1, 0, 1], 1)
        with self.assertRaises(ValueError):
            occ.flags[0] = 0


class TestLevels(MyTestCase):
    def test_empty(self):
        occ = OccupancyPattern(np.zeros(7), 0)
        levels = draw_levels(occ, 0.5, 2.0, np.random.default_rng(0))
        self.assertAllClose(levels.levels, np.zeros(7))

    def test_degenerate(self):
        occ = OccupancyPattern([1, 0, 1, 0, 1, 0, 1], 2)
        levels = draw_levels(occ, 1.0, 1.0, np.random.default_rng(0))
        self.assertAllClose(levels.levels, occ.flags.astype(float))

    def test_support_and_symmetry(self):
        occ = OccupancyPattern([1, 0, 0, 0, 1], 1)
        rng = np.random.default_rng(1)
        for _ in range(10 ** 4):
            levels = draw_levels(occ, 0.5, 2.0, rng).levels
            self.assertEqual(levels[0], levels[4])
            self.assertTrue(0.5 <= levels[0] <= 2.0)
            self.assertEqual(list(levels[1:4]), [0, 0, 0])

    def test_check_support(self):
        occ = OccupancyPattern([1, 0, 0, 0, 1], 1)
        levels = draw_levels(occ, 0.5, 2.0, np.random.default_rng(1))
        levels.check_support(occ)
        with self.assertRaises(ValueError):
            SubbandLevels(np.zeros(5)).check_support(occ)

    def test_bad_interval(self):
        occ = OccupancyPattern([1, 0, 1], 1)
        for low, high in [(0, 1), (2, 1), (-1, 1)]:
            with self.subTest(low=low, high=high):
                with self.assertRaises(ValueError):
                    draw_levels(occ, low, high, np.random.default_rng(0))

    def test_rejects_asymmetric(self):
        with self.assertRaises(ValueError):
            SubbandLevels([1.0, 0.0, 0.5])


class TestChannel(MyTestCase):
    def test_identity(self):
        cfg = make_config(6e9, 30e6)
        channel = draw_channel(cfg, "identity")
        self.assertAllClose(channel.gains, np.ones(201))

    def test_rayleigh_mean(self):
        cfg = make_config(6e9, 30e6)
        rng = np.random.default_rng(5)
        # l = 0 ... L0 are independent draws
        draws = np.concatenate(
            [
                draw_channel(cfg, ("rayleigh", 1.0), rng).gains[cfg.L0 :]
                for _ in range(1000)
            ]
        )
        self.assertGreater(draws.size, 10 ** 5)
        self.assertAlmostEqual(
            draws.mean() / math.sqrt(math.pi / 2), 1.0, delta=0.01
        )

    def test_rayleigh_mirrored(self):
        cfg = make_config(31, 1)
        rng = np.random.default_rng(2)
        for _ in range(1000):
            gains = draw_channel(cfg, ("rayleigh", 2.5), rng).gains
            self.assertTrue(np.array_equal(gains - gains[::-1], np.zeros(31)))
            self.assertTrue(np.all(gains >= 0))

    def test_bad_fading(self):
        cfg = make_config(3, 1)
        with self.assertRaises(ValueError):
            draw_channel(cfg, "lognormal")
        with self.assertRaises(ValueError):
            draw_channel(cfg, ("rayleigh", 0.0), np.random.default_rng(0))

    def test_validation(self):
        with self.assertRaises(ValueError):
            ChannelProfile([1.0, np.inf, 1.0])


class TestNoise(MyTestCase):
    def test_negative(self):
        with self.assertRaises(ValueError):
            NoiseModel(-1.0)

    def test_from_snr(self):
        clean = np.array([3.0, 4.0])
        noise = NoiseModel.from_snr_db(10.0, clean)
        snr = np.sum(clean ** 2) / (2 * noise.sigma_w ** 2)
        self.assertAlmostEqual(snr, 10.0)

    def test_noiseless(self):
        self.assertEqual(NoiseModel.from_snr_db(math.inf, [1.0]).sigma_w, 0.0)
        self.assertEqual(NoiseModel.from_snr_db(10.0, [0.0, 0.0]).sigma_w, 0.0)


class TestSubbandSpectra(MyTestCase):
    def test_levels_and_symmetry(self):
        levels = SubbandLevels([1.5, 0.0, 0.0, 0.0, 1.5])
        spectra = draw_subband_spectra(levels, 16, np.random.default_rng(0))
        self.assertEqual(spectra.values.shape, (5, 16))
        self.assertAllClose(spectra.levels(), levels.levels)
        self.assertAllClose(
            spectra.values, np.conj(spectra.values[::-1, ::-1])
        )

    def test_dc(self):
        levels = SubbandLevels([0.0, 2.0, 0.0])
        spectra = draw_subband_spectra(levels, 9, np.random.default_rng(1))
        self.assertAllClose(spectra.levels(), levels.levels)

    def test_rejects_non_real(self):
        with self.assertRaises(ValueError):
            SubbandSpectra(np.array([[1j, 0], [0, 0], [0, 0]]))


if __name__ == "__main__":
    unittest.main()
