#!/usr/bin/env python3

""" Fusion center: measurement matrix, sparse recovery and decision. """

from widesense.fusion.matrix import (
    MeasurementMatrix,
    MeasurementVector,
    assemble_matrix,
)
from widesense.fusion.recovery import (
    SolverOptions,
    SolverReport,
    RecoveredLevels,
    bp_recover,
    default_epsilon,
    folding_matrix,
    fold_levels,
    unfold_levels,
)
from widesense.fusion.oracle import oracle_recover
from widesense.fusion.decision import DecisionVector, decide
