#!/usr/bin/env python3

""" Experiment configuration, Monte Carlo campaigns and the command line
interface. """

from widesense.harness.config import (
    ExperimentConfig,
    SpectrumSettings,
    LevelSettings,
    NoiseSettings,
    FadingSettings,
    LambdaGridSettings,
)
from widesense.harness.trial import TrialRecord, run_trial
from widesense.harness.rates import RateTable, rate_table, rates_frame
from widesense.harness.campaign import Campaign, CampaignResult, sweep_k
from widesense.harness.checks import oracle_check
