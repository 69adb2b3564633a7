#!/usr/bin/env python3

""" Partition of the wideband spectrum into equally wide subbands. """

# std
from dataclasses import dataclass
import math

# 3rd
import numpy as np

# ours
from widesense.errors import ConfigError


@dataclass(frozen=True)
class SpectrumConfig:
    """Partition of the spectrum (centred at zero) into ``L = 2 L0 + 1``
    non-overlapping subbands of bandwidth ``B``.

    ``total_bandwidth_hz`` is the bandwidth covered by the partition and
    always equals ``L * B``. ``nominal_bandwidth_hz`` is the bandwidth the
    partition was requested for (e.g. 6 GHz for 201 subbands of 30 MHz); it
    is what a Nyquist sampler of the band would have to run at.

    All per-subband arrays in this package are ordered by the signed subband
    index ``l = L0, L0 - 1, ..., -L0``, i.e. position ``i`` holds subband
    ``l = L0 - i`` and the DC subband sits in the middle.
    """

    total_bandwidth_hz: float
    subband_bandwidth_hz: float
    subband_count: int
    half_count: int
    nominal_bandwidth_hz: float = None

    def __post_init__(self):
        if self.subband_count != 2 * self.half_count + 1:
            raise ConfigError(
                "Subband count {} is not 2 * {} + 1.".format(
                    self.subband_count, self.half_count
                )
            )
        if self.half_count < 0:
            raise ConfigError("Negative half count {}.".format(self.half_count))
        if self.total_bandwidth_hz != (
            self.subband_count * self.subband_bandwidth_hz
        ):
            raise ConfigError(
                "Total bandwidth {} Hz is not {} x {} Hz.".format(
                    self.total_bandwidth_hz,
                    self.subband_count,
                    self.subband_bandwidth_hz,
                )
            )
        if self.nominal_bandwidth_hz is None:
            object.__setattr__(
                self, "nominal_bandwidth_hz", self.total_bandwidth_hz
            )

    @property
    def L(self) -> int:
        return self.subband_count

    @property
    def L0(self) -> int:
        return self.half_count

    def subband_indices(self) -> np.ndarray:
        """Signed subband indices ``[L0, ..., 0, ..., -L0]``."""
        return np.arange(self.half_count, -self.half_count - 1, -1)

    def position(self, l: int) -> int:
        """Array position of the signed subband index ``l``."""
        if abs(l) > self.half_count:
            raise ValueError(
                "Subband index {} outside of [-{}, {}].".format(
                    l, self.half_count, self.half_count
                )
            )
        return self.half_count - l

    @staticmethod
    def mirror(values) -> np.ndarray:
        """Reflect a per-subband array about ``l = 0``."""
        return np.asarray(values)[::-1]

    def centre_frequencies_hz(self) -> np.ndarray:
        return self.subband_indices() * self.subband_bandwidth_hz


def make_config(
    total_bandwidth_hz: float, subband_bandwidth_hz: float, round_up=True
):
    """Partition the band ``W`` into subbands of width ``B``.

    The number of subbands on either side of the DC subband is
    ``L0 = ceil((W - B) / (2 B))``. For an odd ratio ``W / B`` this gives
    exactly ``L = W / B`` subbands; for an even ratio the outermost
    subbands reach half a subband beyond ``+-W/2`` and ``L = W / B + 1``
    (6 GHz in 30 MHz subbands gives the usual 201). Even ratios are
    therefore accepted by default, 6 GHz in 40 MHz subbands gives ``L =
    151``; pass ``round_up=False`` to reject them instead.

    Args:
        total_bandwidth_hz: Total bandwidth ``W``
        subband_bandwidth_hz: Subband bandwidth ``B``
        round_up: Accept an even ratio ``W / B`` and add one subband

    Returns:
        :class:`SpectrumConfig`

    Raises:
        ConfigError: non-positive bandwidths, a non-integer ``W / B`` or
            an even one with ``round_up=False``
    """
    if not total_bandwidth_hz > 0 or not subband_bandwidth_hz > 0:
        raise ConfigError(
            "Bandwidths must be positive, got W={} and B={}.".format(
                total_bandwidth_hz, subband_bandwidth_hz
            )
        )
    ratio = total_bandwidth_hz / subband_bandwidth_hz
    n = int(round(ratio))
    if n < 1 or not math.isclose(ratio, n, rel_tol=1e-9):
        raise ConfigError(
            "W / B = {} is not an integer number of subbands.".format(ratio)
        )
    if n % 2 == 0 and not round_up:
        raise ConfigError(
            "W / B = {} is even, there is no centred DC subband.".format(n)
        )
    half_count = n // 2
    count = 2 * half_count + 1
    return SpectrumConfig(
        total_bandwidth_hz=count * float(subband_bandwidth_hz),
        subband_bandwidth_hz=float(subband_bandwidth_hz),
        subband_count=count,
        half_count=half_count,
        nominal_bandwidth_hz=float(total_bandwidth_hz),
    )
