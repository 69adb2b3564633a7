#!/usr/bin/env python3

""" Receiver operating characteristic: detection versus false alarm
probability as the decision threshold is swept. """

# std
from dataclasses import dataclass
import math
from typing import Sequence

# 3rd party
import numpy as np
import pandas as pd
import scipy.integrate

# ours
from widesense.metrics.detection import AGGREGATION_MODES, as_flags, as_levels
from widesense.util.log import get_logger

log = get_logger("ROC")


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Points ``(lambda, Pf, Pd)`` ordered by ascending threshold. Both
    probabilities are non-increasing in the threshold."""

    lambdas: np.ndarray
    pf: np.ndarray
    pd: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ["lambdas", "pf", "pd"]:
            array = np.array(getattr(self, name), dtype=float)
            array.flags.writeable = False
            arrays[name] = array
            object.__setattr__(self, name, array)
        shapes = {array.shape for array in arrays.values()}
        if len(shapes) != 1:
            raise ValueError("Thresholds and probabilities differ in length.")
        if np.any(np.diff(arrays["lambdas"]) < 0):
            raise ValueError("Thresholds must be sorted ascending.")
        for name in ["pf", "pd"]:
            values = arrays[name][~np.isnan(arrays[name])]
            if np.any((values < 0) | (values > 1)):
                raise ValueError("{} outside of [0, 1].".format(name))

    def __len__(self):
        return self.lambdas.size

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"lambda": self.lambdas, "Pd": self.pd, "Pf": self.pf},
            columns=["lambda", "Pd", "Pf"],
        )

    def corner(self, pd_min=0.95, pf_max=0.05) -> bool:
        """Whether some threshold reaches ``Pd >= pd_min`` at
        ``Pf <= pf_max``."""
        return bool(np.any((self.pd >= pd_min) & (self.pf <= pf_max)))

    def auc(self) -> float:
        """Area under the curve, closed with the points (0, 0) and (1, 1)."""
        valid = ~(np.isnan(self.pf) | np.isnan(self.pd))
        pf = np.concatenate([[0.0], self.pf[valid][::-1], [1.0]])
        pd_ = np.concatenate([[0.0], self.pd[valid][::-1], [1.0]])
        order = np.argsort(pf, kind="stable")
        return float(scipy.integrate.trapezoid(pd_[order], pf[order]))


def _exceed_counts(values: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Number of ``values`` strictly above every grid threshold."""
    ordered = np.sort(values)
    return ordered.size - np.searchsorted(ordered, grid, side="right")


def roc_sweep(
    x_hat_trials: Sequence,
    d_true_trials: Sequence,
    lambda_grid,
    mode="per-trial",
) -> RocCurve:
    """Detection and false alarm probabilities for every threshold of the
    grid, from one sort per trial.

    Args:
        x_hat_trials: Recovered levels of every trial
        d_true_trials: True occupancy of every trial
        lambda_grid: Thresholds, sorted ascending
        mode: ``"per-trial"`` (mean of per-trial ratios, trials without
            busy/idle subbands left out) or ``"pooled"``

    Returns:
        :class:`RocCurve`
    """
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("Empty threshold grid.")
    if np.any(np.diff(grid) < 0):
        raise ValueError("Threshold grid must be sorted ascending.")
    if mode not in AGGREGATION_MODES:
        raise ValueError("Unknown aggregation mode {!r}.".format(mode))
    if len(x_hat_trials) == 0 or len(x_hat_trials) != len(d_true_trials):
        raise ValueError(
            "Need the same non-zero number of estimates ({}) and truths "
            "({}).".format(len(x_hat_trials), len(d_true_trials))
        )

    # per-trial sums of ratios / pooled sums of counts
    numerators = {"pd": np.zeros(grid.size), "pf": np.zeros(grid.size)}
    denominators = {"pd": 0, "pf": 0}
    for x_hat, d_true in zip(x_hat_trials, d_true_trials):
        x_hat, d_true = as_levels(x_hat), as_flags(d_true)
        if x_hat.shape != d_true.shape:
            raise ValueError("Estimate and truth differ in shape.")
        for key, selection in [("pd", d_true == 1), ("pf", d_true == 0)]:
            total = int(np.sum(selection))
            if total == 0:
                continue
            exceed = _exceed_counts(x_hat[selection], grid)
            if mode == "per-trial":
                numerators[key] += exceed / total
                denominators[key] += 1
            else:
                numerators[key] += exceed
                denominators[key] += total

    probabilities = {}
    for key in ["pd", "pf"]:
        if denominators[key] == 0:
            probabilities[key] = np.full(grid.size, math.nan)
        else:
            probabilities[key] = numerators[key] / denominators[key]
    return RocCurve(grid, probabilities["pf"], probabilities["pd"])


def default_lambda_grid(busy_levels, points=64, low=1e-3, high=10.0):
    """Logarithmic grid of ``points`` thresholds from ``low`` to ``high``
    times the median recovered level of truly busy subbands."""
    if points < 1 or not 0 < low <= high:
        raise ValueError(
            "Invalid grid specification: points={}, low={}, high={}.".format(
                points, low, high
            )
        )
    busy_levels = np.asarray(busy_levels, dtype=float).ravel()
    median = float(np.median(busy_levels)) if busy_levels.size else 0.0
    if not median > 0:
        log.warning(
            "No positive busy levels to scale the threshold grid, using a "
            "median of 1."
        )
        median = 1.0
    return np.geomspace(low, high, points) * median


def best_threshold(curve: RocCurve, pf_max: float = None) -> float:
    """Threshold of the grid maximising ``Pd - Pf``; the smallest such
    threshold on ties.

    Args:
        curve: ROC curve of a pilot run
        pf_max: Only consider thresholds with ``Pf <= pf_max``. If no
            threshold of the grid gets there, the largest one is returned.

    Returns:
        Threshold
    """
    score = curve.pd - curve.pf
    if pf_max is not None:
        allowed = (curve.pf <= pf_max) | np.isnan(curve.pf)
        if not np.any(allowed):
            log.warning(
                "No threshold of the grid keeps Pf below {:.3g}, using the "
                "largest one.".format(pf_max)
            )
            return float(curve.lambdas[-1])
        score = np.where(allowed, score, np.nan)
    if np.all(np.isnan(score)):
        log.warning("ROC curve has no valid point, using the first threshold.")
        return float(curve.lambdas[0])
    return float(curve.lambdas[int(np.nanargmax(score))])
