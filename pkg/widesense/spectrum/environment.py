#!/usr/bin/env python3

""" Ground truth of one sensing interval: which subbands the primary users
occupy, how strong they are, the channel they reach the cluster through and
the noise on the measurements. """

# std
from dataclasses import dataclass
import math
from typing import Tuple, Union

# 3rd party
import numpy as np

# ours
from widesense.errors import ConfigError
from widesense.spectrum.config import SpectrumConfig
from widesense.util.log import get_logger

log = get_logger("Spectrum")


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.flags.writeable = False
    return array


def _check_symmetric(values: np.ndarray, what: str) -> None:
    if values.ndim != 1 or values.size % 2 != 1:
        raise ValueError(
            "{} must be a 1D array of odd length, got shape {}.".format(
                what, values.shape
            )
        )
    if not np.array_equal(values, values[::-1]):
        raise ValueError("{} are not symmetric about l = 0.".format(what))


@dataclass(frozen=True, eq=False)
class OccupancyPattern:
    """Busy (1) / idle (0) flag of every subband, ordered ``l = L0 ... -L0``.

    Each of the ``pu_count`` primary users occupies a pair of mirrored
    subbands ``+-l``; the DC subband is never occupied.
    """

    flags: np.ndarray
    pu_count: int

    def __post_init__(self):
        flags = _frozen_array(self.flags, np.int8)
        object.__setattr__(self, "flags", flags)
        _check_symmetric(flags, "Occupancy flags")
        if not np.all((flags == 0) | (flags == 1)):
            raise ValueError("Occupancy flags must be 0 or 1.")
        if flags[flags.size // 2] != 0:
            raise ValueError("The DC subband must not be occupied.")
        if int(flags.sum()) != 2 * self.pu_count:
            raise ValueError(
                "{} occupied subbands do not match {} primary users.".format(
                    int(flags.sum()), self.pu_count
                )
            )

    @property
    def L(self) -> int:
        return self.flags.size

    @property
    def occupied_count(self) -> int:
        return 2 * self.pu_count

    @property
    def occupation_ratio(self) -> float:
        """Fraction of occupied subbands"""
        return self.occupied_count / self.L

    def occupied_bandwidth_hz(self, cfg: SpectrumConfig) -> float:
        return self.occupied_count * cfg.subband_bandwidth_hz

    def busy_indices(self) -> np.ndarray:
        """Signed indices of the occupied subbands (descending)."""
        half = self.L // 2
        return np.arange(half, -half - 1, -1)[self.flags == 1]


@dataclass(frozen=True, eq=False)
class SubbandLevels:
    """Average spectral magnitude of every subband, ordered
    ``l = L0 ... -L0``."""

    levels: np.ndarray

    def __post_init__(self):
        levels = _frozen_array(self.levels, float)
        object.__setattr__(self, "levels", levels)
        _check_symmetric(levels, "Subband levels")
        if not np.all(np.isfinite(levels)) or np.any(levels < 0):
            raise ValueError("Subband levels must be finite and >= 0.")

    @property
    def L(self) -> int:
        return self.levels.size

    def check_support(self, occupancy: OccupancyPattern) -> None:
        """Raise ``ValueError`` unless exactly the occupied subbands carry
        a positive level."""
        if occupancy.L != self.L:
            raise ValueError(
                "Occupancy of length {} for levels of length {}.".format(
                    occupancy.L, self.L
                )
            )
        if not np.array_equal(self.levels > 0, occupancy.flags == 1):
            raise ValueError("Levels are not supported on the occupancy.")


@dataclass(frozen=True, eq=False)
class ChannelProfile:
    """Flat magnitude gain ``H_l`` of every subband, common to all nodes of
    the cluster."""

    gains: np.ndarray

    def __post_init__(self):
        gains = _frozen_array(self.gains, float)
        object.__setattr__(self, "gains", gains)
        _check_symmetric(gains, "Channel gains")
        if not np.all(np.isfinite(gains)) or np.any(gains < 0):
            raise ValueError("Channel gains must be finite and >= 0.")

    @property
    def L(self) -> int:
        return self.gains.size

    @classmethod
    def identity(cls, L: int) -> "ChannelProfile":
        return cls(np.ones(L))


@dataclass(frozen=True)
class NoiseModel:
    """Standard deviation of the additive noise on every measurement."""

    sigma_w: float = 0.0

    def __post_init__(self):
        if not self.sigma_w >= 0 or not math.isfinite(self.sigma_w):
            raise ValueError(
                "Noise standard deviation must be finite and >= 0, "
                "got {}.".format(self.sigma_w)
            )

    @classmethod
    def from_snr_db(cls, snr_db: float, clean, K: int = None) -> "NoiseModel":
        """Noise level for a per-measurement SNR of ``snr_db``, where

        .. math::

            \\mathrm{SNR} = \\frac{\\|A X\\|_2^2}{K \\sigma_w^2}.

        Args:
            snr_db: SNR in dB, ``inf`` means noiseless
            clean: Noiseless measurements ``A X`` (length K)
            K: Number of measurements (defaults to the length of ``clean``)

        Returns:
            :class:`NoiseModel`
        """
        clean = np.asarray(clean, dtype=float)
        if K is None:
            K = clean.size
        if K < 1:
            raise ValueError(
                "Need at least one measurement, got K={}.".format(K)
            )
        if math.isinf(snr_db) and snr_db > 0:
            return cls(0.0)
        if math.isnan(snr_db):
            raise ValueError("SNR must not be NaN.")
        power = float(np.sum(clean ** 2))
        if power == 0:
            log.debug("Silent measurements, noise level set to zero.")
        snr = 10 ** (snr_db / 10)
        return cls(math.sqrt(power / (K * snr)))


@dataclass(frozen=True, eq=False)
class SubbandSpectra:
    """Complex spectrum of every subband sampled on ``bins`` baseband
    frequencies ``f_0 ... f_{bins-1}`` that are symmetric about zero.

    Row ``i`` belongs to subband ``l = L0 - i``. The spectra are those of a
    real signal, ``X_{-l}(f_i) = conj(X_l(f_{-i}))``, and the mean modulus of
    every row equals the level of its subband.
    """

    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values, complex)
        object.__setattr__(self, "values", values)
        if values.ndim != 2 or values.shape[0] % 2 != 1:
            raise ValueError(
                "Expected an (L, bins) array with odd L, got shape {}.".format(
                    values.shape
                )
            )
        mirrored = np.conj(values[::-1, ::-1])
        if not np.allclose(values, mirrored, rtol=1e-12, atol=1e-12):
            raise ValueError("Subband spectra are not those of a real signal.")

    @property
    def L(self) -> int:
        return self.values.shape[0]

    @property
    def bins(self) -> int:
        return self.values.shape[1]

    def levels(self) -> np.ndarray:
        """Mean modulus of every subband"""
        return np.mean(np.abs(self.values), axis=1)


# =============================================================================
# Random draws
# =============================================================================


def draw_occupancy(
    cfg: SpectrumConfig, J: int, rng: np.random.Generator
) -> OccupancyPattern:
    """Let ``J`` primary users pick distinct subband pairs ``+-l`` with
    ``l`` uniform in ``1 ... L0``."""
    if J < 0 or J > cfg.L0:
        raise ConfigError(
            "{} primary users do not fit into {} subband pairs.".format(
                J, cfg.L0
            )
        )
    flags = np.zeros(cfg.L, dtype=np.int8)
    if J:
        chosen = rng.choice(np.arange(1, cfg.L0 + 1), size=J, replace=False)
        flags[cfg.L0 - chosen] = 1
        flags[cfg.L0 + chosen] = 1
    return OccupancyPattern(flags, J)


def draw_levels(
    occupancy: OccupancyPattern,
    low=0.5,
    high=2.0,
    rng: np.random.Generator = None,
) -> SubbandLevels:
    """Draw one level uniform in ``[low, high]`` per occupied subband pair.

    Levels are drawn for the occupied positive indices in ascending order of
    ``l``, so the draw only depends on the occupancy and the stream.
    """
    if not low > 0 or not high >= low:
        raise ValueError(
            "Need 0 < low <= high, got low={} and high={}.".format(low, high)
        )
    L = occupancy.L
    half = L // 2
    levels = np.zeros(L)
    # occupied l > 0, ascending
    positive = np.flatnonzero(occupancy.flags[:half][::-1]) + 1
    if positive.size:
        if low == high:
            values = np.full(positive.size, float(low))
        else:
            values = rng.uniform(low, high, size=positive.size)
        levels[half - positive] = values
        levels[half + positive] = values
    return SubbandLevels(levels)


FadingSpec = Union[str, Tuple[str, float]]


def _parse_fading(fading: FadingSpec) -> Tuple[str, float]:
    if isinstance(fading, str):
        mode, scale = fading, 1.0
    else:
        mode, scale = fading
    if mode not in ("identity", "rayleigh"):
        raise ValueError("Unknown fading mode {!r}.".format(mode))
    if mode == "rayleigh" and not scale > 0:
        raise ValueError(
            "Rayleigh scale must be positive, got {}.".format(scale)
        )
    return mode, float(scale)


def draw_channel(
    cfg: SpectrumConfig,
    fading: FadingSpec = "identity",
    rng: np.random.Generator = None,
) -> ChannelProfile:
    """Per-subband channel gains.

    Args:
        cfg: Spectrum partition
        fading: ``"identity"`` (all gains 1) or ``("rayleigh", scale)``
            (Rayleigh distributed magnitude, drawn for ``l = 0 ... L0`` and
            mirrored)
        rng: Random stream (unused for the identity channel)

    Returns:
        :class:`ChannelProfile`
    """
    mode, scale = _parse_fading(fading)
    if mode == "identity":
        return ChannelProfile.identity(cfg.L)
    # l = 0, 1, ..., L0
    drawn = rng.rayleigh(scale, size=cfg.L0 + 1)
    gains = np.concatenate([drawn[::-1], drawn[1:]])
    return ChannelProfile(gains)


def draw_subband_spectra(
    levels: SubbandLevels, bins: int, rng: np.random.Generator
) -> SubbandSpectra:
    """Random complex spectral shapes for the magnitude-averaged measurement
    mode.

    Every occupied subband ``l > 0`` gets circular Gaussian values on the
    ``bins`` frequencies, rescaled to the mean modulus ``levels[l]``; its
    mirror ``-l`` is the conjugate reflection. Idle subbands are zero.
    """
    if bins < 1:
        raise ValueError(
            "Need at least one frequency bin, got {}.".format(bins)
        )
    L = levels.L
    half = L // 2
    values = np.zeros((L, bins), dtype=complex)
    # l = 0 first, then l = 1 ... L0
    for l in range(0, half + 1):
        level = levels.levels[half - l]
        if level == 0:
            continue
        shape = rng.standard_normal(bins) + 1j * rng.standard_normal(bins)
        if l == 0:
            shape = (shape + np.conj(shape[::-1])) / 2
        shape *= level / np.mean(np.abs(shape))
        values[half - l] = shape
        values[half + l] = np.conj(shape[::-1])
    return SubbandSpectra(values)
