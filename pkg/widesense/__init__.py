#!/usr/bin/env python3

# ours
import widesense.spectrum
import widesense.sampler
import widesense.fusion
import widesense.metrics
import widesense.harness
import widesense.util
from widesense.harness import Campaign, ExperimentConfig, run_trial
from widesense.spectrum import make_config
from widesense.util.metadata import get_version as _get_version

version = _get_version()
