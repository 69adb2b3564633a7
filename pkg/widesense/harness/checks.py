#!/usr/bin/env python3

""" Cross-checks of the recovery against exhaustive search on small,
noiseless instances. """

# std
from typing import Optional

# 3rd party
import numpy as np
import pandas as pd

# ours
from widesense.fusion.matrix import assemble_matrix
from widesense.fusion.oracle import oracle_recover
from widesense.fusion.recovery import SolverOptions, bp_recover
from widesense.spectrum.config import make_config
from widesense.spectrum.environment import draw_levels, draw_occupancy
from widesense.util.log import get_logger
from widesense.util.seeding import ENVIRONMENT_STREAM, stream, trial_seed

log = get_logger("Checks")


def oracle_check(
    L=15,
    J=1,
    K: Optional[int] = None,
    instances=100,
    master_seed=0,
    support_tol=1e-6,
    opts: SolverOptions = SolverOptions(),
) -> pd.DataFrame:
    """Compare :func:`~widesense.fusion.recovery.bp_recover` (exact
    constraint) with the exhaustive search over supports of size up to
    ``2 J``.

    Args:
        L: Number of subbands (odd)
        J: Number of primary users
        K: Number of nodes, default ``8 J``
        instances: Number of seeded instances
        master_seed: Seed the instance seeds are derived from
        support_tol: Levels above this count as part of the support
        opts: Solver options

    Returns:
        DataFrame with one row per instance and the columns ``trial_seed``,
        ``support_match`` and ``max_abs_diff``
    """
    if K is None:
        K = max(1, 8 * J)
    cfg = make_config(L, 1)
    rows = []
    for index in range(instances):
        seed = trial_seed(master_seed, index)
        env = stream(seed, ENVIRONMENT_STREAM)
        occupancy = draw_occupancy(cfg, J, env)
        levels = draw_levels(occupancy, 0.5, 2.0, env)
        A = assemble_matrix(seed, K, cfg, log=log)
        y = (A.entries @ levels.levels).real
        bp = bp_recover(A, y, opts=opts, epsilon=0).x_hat
        oracle = oracle_recover(A, y, 2 * J).x_hat
        match = bool(np.array_equal(bp > support_tol, oracle > support_tol))
        rows.append((seed, match, float(np.max(np.abs(bp - oracle)))))
        log.debug(
            "Instance {}: support match {}, max difference {:.3g}".format(
                index, match, rows[-1][2]
            )
        )
    return pd.DataFrame(
        rows, columns=["trial_seed", "support_match", "max_abs_diff"]
    )
