#!/usr/bin/env python3

# std
from dataclasses import dataclass
from typing import Union

# 3rd party
import numpy as np

# ours
from widesense.fusion.recovery import RecoveredLevels


@dataclass(frozen=True, eq=False)
class DecisionVector:
    """Busy (1) / idle (0) verdict per subband, ordered ``l = L0 ... -L0``,
    as broadcast by the fusion center."""

    d_hat: np.ndarray
    threshold: float

    def __post_init__(self):
        d_hat = np.array(self.d_hat, dtype=np.int8)
        d_hat.flags.writeable = False
        object.__setattr__(self, "d_hat", d_hat)

    @property
    def L(self) -> int:
        return self.d_hat.size

    def busy_indices(self) -> np.ndarray:
        """Signed indices of the subbands declared busy (descending)."""
        half = self.L // 2
        return np.arange(half, -half - 1, -1)[self.d_hat == 1]


def decide(
    x_hat: Union[RecoveredLevels, np.ndarray], threshold: float
) -> DecisionVector:
    """Declare subband ``l`` busy iff ``x_hat[l] > threshold``; a level equal
    to the threshold counts as idle."""
    if not threshold >= 0:
        raise ValueError(
            "Threshold must be non-negative, got {}.".format(threshold)
        )
    if isinstance(x_hat, RecoveredLevels):
        x_hat = x_hat.x_hat
    x_hat = np.asarray(x_hat, dtype=float)
    return DecisionVector((x_hat > threshold).astype(np.int8), float(threshold))
