#!/usr/bin/env python3

""" Discrete-time simulation of the analog sampler of one node, used to check
that the per-subband model reproduces what mixing, low-pass filtering and
low-rate sampling actually do to a signal. """

# std
from dataclasses import dataclass
from typing import Iterable, Union

# 3rd party
import numpy as np
import pandas as pd

# ours
from widesense.errors import ConfigError
from widesense.sampler.mixing import MixingSequence, draw_mixing, fourier_coeffs
from widesense.spectrum.config import SpectrumConfig, make_config
from widesense.spectrum.environment import (
    OccupancyPattern,
    SubbandLevels,
    draw_levels,
    draw_occupancy,
)
from widesense.util.log import get_logger
from widesense.util.seeding import (
    ENVIRONMENT_STREAM,
    TONE_STREAM,
    stream,
    trial_seed,
)

log = get_logger("Sampler")


def hold_response(l, samples_per_period: int) -> np.ndarray:
    """Ratio between the ``l``-th Fourier coefficient of a sampled chip
    waveform (``samples_per_period`` samples per period, every sample held)
    and that of the analog waveform:
    ``exp(j pi l / Q) / sinc(l / Q)``. Exactly 1 for ``l = 0``."""
    l = np.asarray(l, dtype=float)
    return np.exp(1j * np.pi * l / samples_per_period) / np.sinc(
        l / samples_per_period
    )


@dataclass(frozen=True, eq=False)
class AliasingCheck:
    """Outcome of :func:`timedomain_reference`.

    Spectra are indexed by the baseband bins ``q = -(P-1)/2 ... (P-1)/2``.
    """

    measured_spectrum: np.ndarray
    model_spectrum: np.ndarray
    rel_error: float
    hold_deviation: float


def _check_grid(L: int, oversample, periods) -> None:
    if int(oversample) != oversample or oversample < 2:
        raise ConfigError(
            "Oversampling must be an integer >= 2 samples per chip, "
            "got {}.".format(oversample)
        )
    if int(periods) != periods or periods < 1 or periods % 2 != 1:
        raise ConfigError(
            "Number of periods must be an odd positive integer, got {}.".format(
                periods
            )
        )


def _tone_spectrum(
    L: int, levels: SubbandLevels, periods: int, N: int, rng
) -> np.ndarray:
    """Fourier series coefficients of a real signal with random tones on all
    ``periods`` bins of every occupied subband. Bin ``k = l P + q``."""
    half = L // 2
    spectrum = np.zeros(N, dtype=complex)
    offsets = np.arange(-(periods // 2), periods // 2 + 1)
    for l in range(0, half + 1):
        level = levels.levels[half - l]
        if level == 0:
            continue
        tones = rng.standard_normal(periods) + 1j * rng.standard_normal(periods)
        if l == 0:
            tones = (tones + np.conj(tones[::-1])) / 2
        tones *= level / np.mean(np.abs(tones))
        bins = l * periods + offsets
        spectrum[np.mod(bins, N)] = tones
        spectrum[np.mod(-bins, N)] = np.conj(tones)
    return spectrum


def timedomain_reference(
    cfg: SpectrumConfig,
    occupancy: OccupancyPattern,
    levels: SubbandLevels,
    seq: MixingSequence,
    oversample: int = 64,
    periods: int = 9,
    rng: np.random.Generator = None,
) -> AliasingCheck:
    """Push a multiband signal through a sampled model of the node's
    front end and compare the low-rate spectrum with the aliasing model.

    The signal lives on ``P = periods`` mixing periods sampled with
    ``Q = oversample * L`` samples per period, so every tone sits on the DFT
    grid and there is no leakage. It is multiplied by the held chip
    waveform, brick-wall low-pass filtered to ``|f| < B / 2``, decimated to
    one sample per period and Fourier transformed. The model is
    ``Y(q) = sum_l c_l h_l X(q - l P)`` where ``h_l`` is
    :func:`hold_response`, which accounts for the chip waveform being
    sampled rather than analog.

    Args:
        cfg: Spectrum partition
        occupancy: Occupied subbands
        levels: Mean tone magnitude per subband
        seq: Mixing sequence of the node
        oversample: Samples per chip
        periods: Number of mixing periods (odd)
        rng: Stream for the random tones, defaults to a stream derived
            from the seed and node of ``seq``

    Returns:
        :class:`AliasingCheck`
    """
    L = cfg.L
    if seq.L != L:
        raise ValueError(
            "Mixing sequence has {} chips for {} subbands.".format(seq.L, L)
        )
    _check_grid(L, oversample, periods)
    levels.check_support(occupancy)
    oversample, periods = int(oversample), int(periods)
    Q = oversample * L
    N = periods * Q
    if rng is None:
        rng = stream(seq.seed or 0, TONE_STREAM, seq.node_id)

    x_spectrum = _tone_spectrum(L, levels, periods, N, rng)
    x = (N * np.fft.ifft(x_spectrum)).real
    p = np.tile(seq.waveform(oversample), periods)
    z_spectrum = np.fft.fft(x * p) / N

    # ideal low-pass: keep the P bins of the baseband subband
    baseband = np.mod(np.arange(-(periods // 2), periods // 2 + 1), N)
    lowpass = np.zeros(N, dtype=complex)
    lowpass[baseband] = z_spectrum[baseband]
    y = (N * np.fft.ifft(lowpass))[::Q]
    measured = np.fft.fftshift(np.fft.fft(y) / periods)

    l = cfg.subband_indices()
    weights = fourier_coeffs(seq).coeffs * hold_response(l, Q)
    q = np.arange(-(periods // 2), periods // 2 + 1)
    shifted = x_spectrum[np.mod(q[None, :] - l[:, None] * periods, N)]
    model = weights @ shifted

    # relative to the model, or to the input if nothing reaches baseband
    norm_input = np.linalg.norm(x_spectrum)
    scale = np.linalg.norm(model)
    if scale <= 1e-9 * norm_input:
        scale = norm_input
    norm_diff = np.linalg.norm(measured - model)
    if scale == 0:
        rel_error = 0.0 if norm_diff == 0 else float("inf")
    else:
        rel_error = float(norm_diff / scale)
    return AliasingCheck(
        measured_spectrum=measured,
        model_spectrum=model,
        rel_error=rel_error,
        hold_deviation=float(np.max(np.abs(hold_response(l, Q) - 1))),
    )


def selftest_aliasing(
    L=15,
    J=2,
    oversample=64,
    seeds: Union[int, Iterable[int]] = 100,
    periods=9,
    master_seed=0,
) -> pd.DataFrame:
    """Run :func:`timedomain_reference` for many random instances.

    Args:
        L: Number of subbands (odd)
        J: Number of primary users
        oversample: Samples per chip
        seeds: Number of instances or explicit seeds
        periods: Number of mixing periods
        master_seed: Seed the instance seeds are derived from if ``seeds``
            is a number

    Returns:
        DataFrame with columns ``seed``, ``rel_error`` and ``hold_deviation``
    """
    if isinstance(seeds, int):
        seeds = [trial_seed(master_seed, i) for i in range(seeds)]
    cfg = make_config(L, 1)
    rows = []
    for seed in seeds:
        env = stream(seed, ENVIRONMENT_STREAM)
        occupancy = draw_occupancy(cfg, J, env)
        levels = draw_levels(occupancy, 0.5, 2.0, env)
        seq = draw_mixing(1, L, seed)
        check = timedomain_reference(
            cfg, occupancy, levels, seq, oversample=oversample, periods=periods
        )
        log.debug(
            "Seed {}: relative error {:.3g}".format(seed, check.rel_error)
        )
        rows.append((seed, check.rel_error, check.hold_deviation))
    return pd.DataFrame(rows, columns=["seed", "rel_error", "hold_deviation"])
