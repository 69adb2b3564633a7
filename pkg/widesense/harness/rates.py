#!/usr/bin/env python3

""" Sampling rate accounting: Nyquist sampling, a single-node compressed
sampler following the four-to-one rule and the distributed scheme. """

# std
from dataclasses import dataclass, asdict
from typing import Iterable

# 3rd party
import pandas as pd

# ours
from widesense.harness.config import ExperimentConfig

#: Sampling rate per occupied bandwidth of a single compressed sampler
FOUR_TO_ONE = 4


@dataclass(frozen=True)
class RateTable:
    K: int
    nyquist_rate_hz: float
    existing_cs_rate_hz: float
    per_node_rate_hz: float
    sum_rate_hz: float
    occupied_bandwidth_hz: float
    occupation_ratio: float

    def to_dict(self):
        return asdict(self)


def rate_table(cfg: ExperimentConfig, K: int = None) -> RateTable:
    """Rates for ``K`` nodes (default: the first node count of the sweep):
    the Nyquist rate of the full band, the rate of a single compressed
    sampler (four times the occupied bandwidth), the rate of one node (one
    subband width) and the sum over all nodes."""
    if K is None:
        K = cfg.k_values[0]
    if K < 1:
        raise ValueError("Need at least one node, got K={}.".format(K))
    spectrum = cfg.spectrum_config()
    B = spectrum.subband_bandwidth_hz
    occupied = 2 * cfg.pu_count * B
    return RateTable(
        K=int(K),
        nyquist_rate_hz=spectrum.nominal_bandwidth_hz,
        existing_cs_rate_hz=FOUR_TO_ONE * occupied,
        per_node_rate_hz=B,
        sum_rate_hz=K * B,
        occupied_bandwidth_hz=occupied,
        occupation_ratio=2 * cfg.pu_count / spectrum.L,
    )


def rates_frame(cfg: ExperimentConfig, k_values: Iterable[int] = None):
    """One :class:`RateTable` row per node count (default: the sweep)."""
    if k_values is None:
        k_values = cfg.k_values
    rows = [rate_table(cfg, K).to_dict() for K in k_values]
    columns = list(RateTable.__dataclass_fields__)
    return pd.DataFrame(rows, columns=columns)
