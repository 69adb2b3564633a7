#!/usr/bin/env python3

""" One Monte Carlo trial: draw a spectrum, let K nodes measure it, recover
the levels at the fusion center and score the decision. """

# std
from dataclasses import dataclass
import math
from typing import List, Optional

# 3rd party
import numpy as np

# ours
from widesense.fusion.decision import decide
from widesense.fusion.matrix import MeasurementVector, assemble_matrix
from widesense.fusion.recovery import RecoveredLevels, bp_recover
from widesense.harness.config import ExperimentConfig
from widesense.metrics.detection import TrialOutcome, detection_counts, mse
from widesense.sampler.mixing import (
    FourierCoeffRow,
    draw_mixing,
    fourier_coeffs,
    magnitude_measurement,
    node_measurement,
)
from widesense.spectrum.environment import (
    ChannelProfile,
    NoiseModel,
    SubbandLevels,
    SubbandSpectra,
    draw_channel,
    draw_levels,
    draw_occupancy,
    draw_subband_spectra,
)
from widesense.util.log import get_logger
from widesense.util.seeding import ENVIRONMENT_STREAM, NOISE_STREAM, stream

log = get_logger("Trial")


@dataclass(frozen=True, eq=False)
class TrialRecord:
    """Everything a campaign keeps of one trial."""

    trial_seed: int
    K: int
    x_true: np.ndarray
    x_hat: np.ndarray
    d_true: np.ndarray
    threshold: float
    outcome: TrialOutcome
    sigma_w: float = 0.0


def default_threshold(cfg: ExperimentConfig) -> float:
    """Decision threshold used when no pilot run fixed one: the configured
    threshold or half the smallest possible level."""
    if cfg.lambda_grid.threshold is not None:
        return cfg.lambda_grid.threshold
    return cfg.levels.low / 2


def _measure(
    cfg: ExperimentConfig,
    rows: List[FourierCoeffRow],
    H: ChannelProfile,
    levels: SubbandLevels,
    spectra: Optional[SubbandSpectra],
    noise: NoiseModel,
    trial_seed: int,
) -> np.ndarray:
    values = []
    for node_id, row in enumerate(rows, start=1):
        rng = stream(trial_seed, NOISE_STREAM, node_id)
        if cfg.measurement_mode == "magnitude":
            values.append(magnitude_measurement(row, H, spectra, noise, rng))
        else:
            values.append(node_measurement(row, H, levels, noise, rng))
    return np.array(values)


def run_trial(
    cfg: ExperimentConfig,
    trial_seed: int,
    K: Optional[int] = None,
    threshold: Optional[float] = None,
) -> TrialRecord:
    """Run one trial.

    The ground truth comes from the stream ``(trial_seed, environment)``,
    node ``k`` mixes with the chips of ``(trial_seed, node, k)`` and adds the
    noise of ``(trial_seed, noise, k)``. The fusion center rebuilds the
    measurement matrix from ``trial_seed`` alone.

    Args:
        cfg: Validated experiment configuration
        trial_seed: Seed of the trial
        K: Number of nodes, defaults to the first entry of ``cfg.k_values``
        threshold: Decision threshold, defaults to
            :func:`default_threshold`

    Returns:
        :class:`TrialRecord`. A recovery that did not converge is flagged
        in the outcome, not raised.
    """
    if K is None:
        K = cfg.k_values[0]
    if threshold is None:
        threshold = default_threshold(cfg)
    spectrum = cfg.spectrum_config()

    env = stream(trial_seed, ENVIRONMENT_STREAM)
    occupancy = draw_occupancy(spectrum, cfg.pu_count, env)
    levels = draw_levels(occupancy, cfg.levels.low, cfg.levels.high, env)
    H = draw_channel(spectrum, cfg.fading.spec(), env)
    spectra = None
    if cfg.measurement_mode == "magnitude":
        spectra = draw_subband_spectra(levels, cfg.spectral_bins, env)

    # nodes
    rows = [
        fourier_coeffs(draw_mixing(node_id, spectrum.L, trial_seed))
        for node_id in range(1, K + 1)
    ]
    if cfg.noise.sigma_w is not None:
        noise = NoiseModel(cfg.noise.sigma_w)
    else:
        clean = _measure(
            cfg, rows, H, levels, spectra, NoiseModel(), trial_seed
        )
        noise = NoiseModel.from_snr_db(cfg.noise.snr_db, clean, K)
    y = MeasurementVector(
        _measure(cfg, rows, H, levels, spectra, noise, trial_seed)
    )

    # fusion center
    A = assemble_matrix(trial_seed, K, spectrum, H, log=log)
    recovered = bp_recover(A, y, noise, cfg.solver)  # type: RecoveredLevels
    decision = decide(recovered, threshold)

    counts = detection_counts(decision, occupancy)
    if np.any(levels.levels):
        error = mse(recovered, levels)
    else:
        error = math.nan
    if not recovered.report.converged:
        log.warning(
            "Recovery of trial {} with K={} did not converge ({}).".format(
                trial_seed, K, recovered.report.status
            )
        )
    log.debug(
        "Trial {} K={}: mse={:.3g}, Pd={}, Pf={}".format(
            trial_seed, K, error, counts.pd, counts.pf
        )
    )
    return TrialRecord(
        trial_seed=trial_seed,
        K=K,
        x_true=levels.levels,
        x_hat=recovered.x_hat,
        d_true=occupancy.flags,
        threshold=float(threshold),
        outcome=TrialOutcome.from_counts(
            counts, error, recovered.report.converged
        ),
        sigma_w=noise.sigma_w,
    )
