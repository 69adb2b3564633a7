#!/usr/bin/env python3

""" Exhaustive sparse recovery over all small supports. Only feasible for
small problems; used to cross-check
:func:`~widesense.fusion.recovery.bp_recover`. """

# std
import itertools
import math

# 3rd party
import numpy as np
import scipy.optimize

# ours
from widesense.errors import CombinatorialGuardError
from widesense.fusion.matrix import MeasurementMatrix
from widesense.fusion.recovery import (
    RecoveredLevels,
    SolverReport,
    measurement_values,
)
from widesense.util.log import get_logger

log = get_logger("Oracle")

#: Largest number of supports :func:`oracle_recover` agrees to enumerate
MAX_SUPPORTS = 10 ** 6


def support_count(L: int, s_max: int) -> int:
    return sum(math.comb(L, s) for s in range(1, s_max + 1))


def oracle_recover(
    A: MeasurementMatrix, y, s_max: int, max_supports=MAX_SUPPORTS
) -> RecoveredLevels:
    """Nonnegative least squares on every support of size ``1 ... s_max``.

    The winner has the smallest residual; residuals within
    ``1e-9 * max(1, ||y||)`` count as equal and are decided by the smaller
    l1 norm, then by the lexicographically smaller support (array
    positions of the nonzero entries).

    Args:
        A: Measurement matrix
        y: Measurements
        s_max: Largest support size
        max_supports: Guard on the number of supports

    Returns:
        :class:`~widesense.fusion.recovery.RecoveredLevels`, with the number
        of examined supports as iteration count
    """
    y = measurement_values(y)
    K, L = A.shape
    if y.size != K:
        raise ValueError(
            "{} measurements for a matrix with {} rows.".format(y.size, K)
        )
    if s_max < 0:
        raise ValueError("s_max must be non-negative, got {}.".format(s_max))
    s_max = min(s_max, L)
    total = support_count(L, s_max)
    if total > max_supports:
        raise CombinatorialGuardError(
            "{} supports up to size {} exceed the limit of {}.".format(
                total, s_max, max_supports
            )
        )
    M = A.realified()
    b = np.concatenate([y, np.zeros(K)])
    tol = 1e-9 * max(1.0, float(np.linalg.norm(b)))

    best_x = np.zeros(L)
    best_key = (float(np.linalg.norm(b)), 0.0, ())
    for size in range(1, s_max + 1):
        for support in itertools.combinations(range(L), size):
            coeffs, residual = scipy.optimize.nnls(M[:, support], b)
            x = np.zeros(L)
            x[list(support)] = coeffs
            key = (residual, float(coeffs.sum()), tuple(np.flatnonzero(x)))
            if _better(key, best_key, tol):
                best_x, best_key = x, key
    log.debug(
        "Examined {} supports, best support {}.".format(total, best_key[2])
    )
    report = SolverReport(
        iterations=total,
        residual_norm=float(np.linalg.norm(A.entries @ best_x - y)),
        l1_norm=float(best_x.sum()),
        converged=True,
        status="optimal",
        feasible=True,
        epsilon=0.0,
    )
    return RecoveredLevels(best_x, report)


def _better(key, best_key, tol) -> bool:
    residual, l1, support = key
    best_residual, best_l1, best_support = best_key
    if residual < best_residual - tol:
        return True
    if residual > best_residual + tol:
        return False
    if l1 < best_l1 - tol:
        return True
    if l1 > best_l1 + tol:
        return False
    return support < best_support
