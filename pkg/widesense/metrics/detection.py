#!/usr/bin/env python3

""" Per-trial figures of merit (normalized estimation error, detection and
false alarm counts) and their aggregation over many trials. """

# std
from dataclasses import dataclass, asdict
import math
from typing import Dict, Iterable, Optional

# 3rd party
import numpy as np
import pandas as pd

# ours
from widesense.errors import NumericalError
from widesense.fusion.decision import DecisionVector
from widesense.fusion.recovery import RecoveredLevels
from widesense.spectrum.environment import OccupancyPattern, SubbandLevels

AGGREGATION_MODES = ("per-trial", "pooled")


def as_levels(x) -> np.ndarray:
    if isinstance(x, RecoveredLevels):
        return x.x_hat
    if isinstance(x, SubbandLevels):
        return x.levels
    return np.asarray(x, dtype=float)


def as_flags(d) -> np.ndarray:
    if isinstance(d, DecisionVector):
        return d.d_hat
    if isinstance(d, OccupancyPattern):
        return d.flags
    return np.asarray(d).astype(np.int8)


def mse(x_hat, x_true) -> float:
    """Normalized estimation error ``||x_hat - x|| / ||x||`` of one trial.

    Raises:
        NumericalError: ``x`` is zero
    """
    x_hat = as_levels(x_hat)
    x_true = as_levels(x_true)
    if x_hat.shape != x_true.shape:
        raise ValueError(
            "Shapes {} and {} differ.".format(x_hat.shape, x_true.shape)
        )
    norm = np.linalg.norm(x_true)
    if norm == 0:
        raise NumericalError("Normalized error of a zero ground truth.")
    return float(np.linalg.norm(x_hat - x_true) / norm)


@dataclass(frozen=True)
class DetectionCounts:
    detect_hits: int
    busy_count: int
    false_hits: int
    idle_count: int

    def __post_init__(self):
        if min(
            self.detect_hits, self.busy_count, self.false_hits, self.idle_count
        ) < 0:
            raise ValueError("Counts must be non-negative: {}".format(self))
        if self.detect_hits > self.busy_count:
            raise ValueError("More hits than busy subbands: {}".format(self))
        if self.false_hits > self.idle_count:
            raise ValueError(
                "More false alarms than idle subbands: {}".format(self)
            )

    @property
    def L(self) -> int:
        return self.busy_count + self.idle_count

    @property
    def pd(self) -> float:
        """Detection probability, NaN without busy subbands"""
        if self.busy_count == 0:
            return math.nan
        return self.detect_hits / self.busy_count

    @property
    def pf(self) -> float:
        """False alarm probability, NaN without idle subbands"""
        if self.idle_count == 0:
            return math.nan
        return self.false_hits / self.idle_count


@dataclass(frozen=True)
class TrialOutcome(DetectionCounts):
    """Counts of one trial plus its normalized error (NaN if the spectrum
    was empty) and whether the recovery converged."""

    mse: float = math.nan
    converged: bool = True

    @classmethod
    def from_counts(
        cls, counts: DetectionCounts, mse: float, converged=True
    ) -> "TrialOutcome":
        return cls(mse=mse, converged=converged, **asdict(counts))


def detection_counts(d_hat, d_true) -> DetectionCounts:
    """Hits (busy and declared busy) and false alarms (idle but declared
    busy) of one decision vector."""
    d_hat = as_flags(d_hat)
    d_true = as_flags(d_true)
    if d_hat.shape != d_true.shape:
        raise ValueError(
            "Decision of shape {} for truth of shape {}.".format(
                d_hat.shape, d_true.shape
            )
        )
    busy = d_true == 1
    declared = d_hat == 1
    return DetectionCounts(
        detect_hits=int(np.sum(busy & declared)),
        busy_count=int(np.sum(busy)),
        false_hits=int(np.sum(~busy & declared)),
        idle_count=int(np.sum(~busy)),
    )


def _stderr(values: pd.Series) -> float:
    values = values.dropna()
    if len(values) < 2:
        return math.nan
    return float(values.std(ddof=1) / math.sqrt(len(values)))


def _binomial_stderr(successes: int, total: int) -> float:
    if total == 0:
        return math.nan
    p = successes / total
    return math.sqrt(p * (1 - p) / total)


def outcomes_frame(outcomes: Iterable[TrialOutcome]) -> pd.DataFrame:
    """One row per trial with the counts, ``mse``, ``Pd`` and ``Pf``."""
    rows = []
    for outcome in outcomes:
        row = asdict(outcome)
        row["Pd"] = outcome.pd
        row["Pf"] = outcome.pf
        rows.append(row)
    columns = [
        "detect_hits",
        "busy_count",
        "false_hits",
        "idle_count",
        "mse",
        "converged",
        "Pd",
        "Pf",
    ]
    return pd.DataFrame(rows, columns=columns)


def aggregate_outcomes(
    outcomes: Iterable[TrialOutcome], mode="per-trial"
) -> Dict[str, Optional[float]]:
    """Average the outcomes of many trials.

    Args:
        outcomes: Trial outcomes
        mode: ``"per-trial"`` averages the per-trial ratios (trials without
            busy or idle subbands are left out of the respective average),
            ``"pooled"`` divides summed counts

    Returns:
        Dictionary with ``mean_mse``, ``Pd``, ``Pf``, the standard errors
        ``mse_stderr``, ``Pd_stderr``, ``Pf_stderr`` and the number of
        ``trials`` and ``not_converged`` trials
    """
    if mode not in AGGREGATION_MODES:
        raise ValueError(
            "Unknown aggregation mode {!r}, use one of {}.".format(
                mode, AGGREGATION_MODES
            )
        )
    df = outcomes_frame(outcomes)
    if df.empty:
        raise ValueError("Nothing to aggregate.")
    mse_values = df["mse"].dropna()
    result = {
        "mean_mse": float(mse_values.mean()) if len(mse_values) else math.nan,
        "mse_stderr": _stderr(df["mse"]),
        "trials": int(len(df)),
        "not_converged": int((~df["converged"].astype(bool)).sum()),
    }
    if mode == "per-trial":
        for column in ["Pd", "Pf"]:
            values = df[column].dropna()
            result[column] = float(values.mean()) if len(values) else math.nan
            result[column + "_stderr"] = _stderr(df[column])
    else:
        busy, idle = int(df["busy_count"].sum()), int(df["idle_count"].sum())
        hits = int(df["detect_hits"].sum())
        false_alarms = int(df["false_hits"].sum())
        result["Pd"] = hits / busy if busy else math.nan
        result["Pf"] = false_alarms / idle if idle else math.nan
        result["Pd_stderr"] = _binomial_stderr(hits, busy)
        result["Pf_stderr"] = _binomial_stderr(false_alarms, idle)
    return result
