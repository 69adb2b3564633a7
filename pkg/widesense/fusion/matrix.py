#!/usr/bin/env python3

""" The measurement matrix the fusion center rebuilds from the mixing seeds of
its nodes, and the vector of their measurements. """

# std
from dataclasses import dataclass
import logging
from typing import Optional, Sequence, Union

# 3rd party
import numpy as np

# ours
from widesense.sampler.mixing import (
    d_coefficients,
    draw_mixing,
    fourier_coeffs,
    fourier_matrix,
)
from widesense.spectrum.config import SpectrumConfig
from widesense.spectrum.environment import ChannelProfile
from widesense.util.log import get_logger


def _read_only(array: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if array is not None:
        array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class MeasurementMatrix:
    """The complex ``K x L`` matrix ``A`` with ``A_kl = c^k_l H_l``.

    Matrices assembled from mixing sequences also carry the factors of
    ``A = S F D H``: the chips ``S`` (``K x L``), the root of unity matrix
    ``F`` (``L x L``), the diagonal of ``D`` (``d_l``) and the diagonal of
    ``H`` (channel gains).
    """

    entries: np.ndarray
    signs: Optional[np.ndarray] = None
    fourier: Optional[np.ndarray] = None
    d: Optional[np.ndarray] = None
    gains: Optional[np.ndarray] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2:
            raise ValueError(
                "Measurement matrix must be 2D, got shape {}.".format(
                    entries.shape
                )
            )
        object.__setattr__(self, "entries", _read_only(entries))
        for name in ["signs", "fourier", "d", "gains"]:
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _read_only(np.array(value)))

    @classmethod
    def from_entries(cls, entries) -> "MeasurementMatrix":
        """Matrix without factors (e.g. synthetic matrices in tests)."""
        return cls(entries)

    @property
    def shape(self):
        return self.entries.shape

    @property
    def K(self) -> int:
        return self.entries.shape[0]

    @property
    def L(self) -> int:
        return self.entries.shape[1]

    @property
    def factored(self) -> bool:
        return self.signs is not None

    def product(self) -> np.ndarray:
        """Recompute ``S F D H`` from the factors."""
        if not self.factored:
            raise ValueError("Matrix was not built from factors.")
        return (self.signs @ self.fourier) * self.d * self.gains

    def realified(self) -> np.ndarray:
        """The real ``2K x L`` matrix ``[Re A; Im A]``."""
        return np.vstack([self.entries.real, self.entries.imag])


@dataclass(frozen=True, eq=False)
class MeasurementVector:
    """The real measurements ``y_1 ... y_K`` reported by the nodes."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError(
                "Measurements must be 1D, got shape {}.".format(values.shape)
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Measurements must be finite.")
        object.__setattr__(self, "values", _read_only(values))

    @property
    def K(self) -> int:
        return self.values.size


def assemble_matrix(
    seeds: Union[int, Sequence[int]],
    K: int,
    cfg: SpectrumConfig,
    H: ChannelProfile = None,
    log: Optional[logging.Logger] = None,
) -> MeasurementMatrix:
    """Rebuild the measurement matrix of nodes ``1 ... K``.

    Args:
        seeds: Either one seed shared by all nodes (node ``k`` then draws
            its chips from the stream ``(seed, k)``) or one seed per node
        K: Number of nodes
        cfg: Spectrum partition
        H: Channel profile, identity if not given
        log: Logger for the warning about non-compressive configurations

    Returns:
        :class:`MeasurementMatrix` including its factors
    """
    if log is None:
        log = get_logger("Fusion")
    if K < 1:
        raise ValueError("Need at least one node, got K={}.".format(K))
    if isinstance(seeds, (int, np.integer)):
        seeds = [int(seeds)] * K
    if len(seeds) != K:
        raise ValueError(
            "Got {} seeds for {} nodes.".format(len(seeds), K)
        )
    if H is None:
        H = ChannelProfile.identity(cfg.L)
    if H.L != cfg.L:
        raise ValueError(
            "Channel has {} gains for {} subbands.".format(H.L, cfg.L)
        )
    if K > cfg.L:
        log.warning(
            "K = {} nodes for L = {} subbands is not a compressed "
            "measurement.".format(K, cfg.L)
        )
    sequences = [
        draw_mixing(node_id, cfg.L, seed)
        for node_id, seed in zip(range(1, K + 1), seeds)
    ]
    entries = np.vstack([fourier_coeffs(seq).coeffs for seq in sequences])
    return MeasurementMatrix(
        entries=entries * H.gains,
        signs=np.vstack([seq.chips for seq in sequences]).astype(float),
        fourier=fourier_matrix(cfg.L),
        d=d_coefficients(cfg.L),
        gains=H.gains,
    )
