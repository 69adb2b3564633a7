#!/usr/bin/env python3

""" Subband partition and random ground truth (occupancy, levels, channel,
noise). """

from widesense.spectrum.config import SpectrumConfig, make_config
from widesense.spectrum.environment import (
    OccupancyPattern,
    SubbandLevels,
    ChannelProfile,
    NoiseModel,
    SubbandSpectra,
    draw_occupancy,
    draw_levels,
    draw_channel,
    draw_subband_spectra,
)
