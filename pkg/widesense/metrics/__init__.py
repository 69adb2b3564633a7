#!/usr/bin/env python3

""" Estimation error, detection probabilities and ROC curves. """

from widesense.metrics.detection import (
    DetectionCounts,
    TrialOutcome,
    mse,
    detection_counts,
    aggregate_outcomes,
    outcomes_frame,
)
from widesense.metrics.roc import (
    RocCurve,
    roc_sweep,
    default_lambda_grid,
    best_threshold,
)
