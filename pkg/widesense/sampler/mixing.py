#!/usr/bin/env python3

""" Pseudorandom mixing sequences of the sensor nodes, their Fourier
coefficients and the scalar measurement every node reports to the fusion
center. """

# std
from dataclasses import dataclass
import functools
from typing import Optional, Union

# 3rd party
import numpy as np
import scipy.integrate

# ours
from widesense.errors import NumericalError
from widesense.spectrum.environment import (
    ChannelProfile,
    NoiseModel,
    SubbandLevels,
    SubbandSpectra,
)
from widesense.util.seeding import NODE_STREAM, stream

#: Relative size of the imaginary part of a measurement we still accept as
#: rounding noise.
IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MixingSequence:
    """The ``L`` chips ``alpha_0 ... alpha_{L-1}`` of the periodic mixing
    waveform of node ``node_id``. Every chip is held for ``T_s / L``."""

    node_id: int
    chips: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        chips = np.array(self.chips, dtype=np.int8)
        chips.flags.writeable = False
        object.__setattr__(self, "chips", chips)
        if chips.ndim != 1 or chips.size % 2 != 1:
            raise ValueError(
                "Need an odd number of chips, got shape {}.".format(chips.shape)
            )
        if not np.all(np.abs(chips) == 1):
            raise ValueError("Chips must be +1 or -1.")

    @property
    def L(self) -> int:
        return self.chips.size

    def waveform(self, samples_per_chip: int) -> np.ndarray:
        """One period of the held chip waveform sampled ``samples_per_chip``
        times per chip."""
        if samples_per_chip < 1:
            raise ValueError(
                "Need at least one sample per chip, got {}.".format(
                    samples_per_chip
                )
            )
        return np.repeat(self.chips.astype(float), samples_per_chip)


def draw_mixing(node_id: int, L: int, seed: int) -> MixingSequence:
    """Draw the chips of node ``node_id`` from the stream ``(seed, node)``.

    The fusion center calls this with the same arguments to regenerate the
    chips the node used.
    """
    if L < 1 or L % 2 != 1:
        raise ValueError("L must be odd and positive, got {}.".format(L))
    rng = stream(seed, NODE_STREAM, node_id)
    chips = 2 * rng.integers(0, 2, size=L, dtype=np.int8) - 1
    return MixingSequence(node_id=node_id, chips=chips, seed=seed)


# =============================================================================
# Fourier coefficients
# =============================================================================


def _signed_indices(L: int) -> np.ndarray:
    half = L // 2
    return np.arange(half, -half - 1, -1)


@functools.lru_cache(maxsize=32)
def fourier_matrix(L: int) -> np.ndarray:
    """The ``L x L`` matrix ``F[m, i] = theta^(l_i m)`` with
    ``theta = exp(-2 pi j / L)`` and ``l_i = L0 - i``.

    The exponent is reduced modulo ``L`` so that every entry is an exact
    ``L``-th root of unity up to one rounding.
    """
    m = np.arange(L)
    exponent = np.mod(np.outer(m, _signed_indices(L)), L)
    matrix = np.exp(-2j * np.pi * exponent / L)
    matrix.flags.writeable = False
    return matrix


@functools.lru_cache(maxsize=32)
def d_coefficients(L: int) -> np.ndarray:
    """Per-chip integration factors ``d_0 = 1/L`` and
    ``d_l = (1 - theta^l) / (2 pi j l)``."""
    l = _signed_indices(L)
    d = np.empty(L, dtype=complex)
    nonzero = l != 0
    theta_l = np.exp(-2j * np.pi * np.mod(l[nonzero], L) / L)
    d[nonzero] = (1 - theta_l) / (2j * np.pi * l[nonzero])
    d[~nonzero] = 1 / L
    d.flags.writeable = False
    return d


@dataclass(frozen=True, eq=False)
class FourierCoeffRow:
    """Fourier coefficients ``c_l`` of a mixing waveform, ordered
    ``l = L0 ... -L0``."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.ndim != 1 or coeffs.size % 2 != 1:
            raise ValueError(
                "Need an odd number of coefficients, got shape {}.".format(
                    coeffs.shape
                )
            )
        if not np.allclose(coeffs[::-1], np.conj(coeffs), rtol=0, atol=1e-12):
            raise ValueError("Coefficients are not conjugate symmetric.")
        if np.any(np.abs(coeffs) > 1 + 1e-12):
            raise ValueError("Coefficients of a +-1 waveform exceed 1.")

    @property
    def L(self) -> int:
        return self.coeffs.size


def fourier_coeffs(seq: MixingSequence) -> FourierCoeffRow:
    """``c_l = d_l sum_m alpha_m theta^(l m)``"""
    L = seq.L
    coeffs = d_coefficients(L) * (seq.chips.astype(float) @ fourier_matrix(L))
    return FourierCoeffRow(coeffs)


def fourier_coeffs_direct(seq: MixingSequence) -> FourierCoeffRow:
    """Fourier coefficients by numerical quadrature of

    .. math::

        c_l = \\frac{1}{T_s} \\int_0^{T_s} p(t) e^{-2\\pi j l t / T_s} dt,

    chip by chip (time in units of ``T_s``). Slow, only meant to check
    :func:`fourier_coeffs`.
    """
    L = seq.L
    l = _signed_indices(L)

    def kernel(t):
        phase = 2 * np.pi * l * t
        return np.concatenate([np.cos(phase), -np.sin(phase)])

    total = np.zeros(2 * L)
    for m, chip in enumerate(seq.chips):
        value, _ = scipy.integrate.quad_vec(
            kernel, m / L, (m + 1) / L, epsabs=1e-15, epsrel=1e-13
        )
        total += chip * value
    return FourierCoeffRow(total[:L] + 1j * total[L:])


# =============================================================================
# Measurements
# =============================================================================


def _as_coeffs(c: Union[FourierCoeffRow, np.ndarray]) -> np.ndarray:
    if isinstance(c, FourierCoeffRow):
        return c.coeffs
    return np.asarray(c, dtype=complex)


def _check_lengths(*lengths: int) -> None:
    if len(set(lengths)) != 1:
        raise ValueError(
            "Per-subband inputs have different lengths {}.".format(lengths)
        )


def node_measurement(
    c: Union[FourierCoeffRow, np.ndarray],
    H: ChannelProfile,
    X: SubbandLevels,
    noise: NoiseModel = NoiseModel(),
    rng: np.random.Generator = None,
) -> float:
    """Scalar measurement of one node,
    ``y = Re(sum_l c_l H_l X_l) + w`` with ``w ~ N(0, sigma_w^2)``.

    The random stream is only touched if ``sigma_w > 0``.

    Raises:
        NumericalError: The weighted sum has an imaginary part that is not
            explained by rounding.
    """
    coeffs = _as_coeffs(c)
    _check_lengths(coeffs.size, H.L, X.L)
    terms = coeffs * H.gains * X.levels
    value = np.sum(terms)
    scale = max(1.0, float(np.sum(np.abs(terms))))
    if abs(value.imag) >= IMAG_RESIDUE_TOL * scale:
        raise NumericalError(
            "Measurement has imaginary part {:.3g} (scale {:.3g}).".format(
                value.imag, scale
            )
        )
    y = float(value.real)
    if noise.sigma_w > 0:
        y += noise.sigma_w * float(rng.standard_normal())
    return y


def magnitude_measurement(
    c: Union[FourierCoeffRow, np.ndarray],
    H: ChannelProfile,
    spectra: SubbandSpectra,
    noise: NoiseModel = NoiseModel(),
    rng: np.random.Generator = None,
) -> float:
    """Modulus-then-average measurement of one node: the mean over the
    baseband bins of ``|sum_l c_l H_l X_l(f) + W(f)|``, with ``W``
    circular complex Gaussian of standard deviation ``sigma_w`` per bin.
    """
    coeffs = _as_coeffs(c)
    _check_lengths(coeffs.size, H.L, spectra.L)
    aliased = (coeffs * H.gains) @ spectra.values
    if noise.sigma_w > 0:
        aliased = aliased + noise.sigma_w / np.sqrt(2) * (
            rng.standard_normal(spectra.bins)
            + 1j * rng.standard_normal(spectra.bins)
        )
    return float(np.mean(np.abs(aliased)))
