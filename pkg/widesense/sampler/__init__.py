#!/usr/bin/env python3

""" Compressed sampler of a single sensor node. """

from widesense.sampler.mixing import (
    MixingSequence,
    FourierCoeffRow,
    draw_mixing,
    fourier_matrix,
    d_coefficients,
    fourier_coeffs,
    fourier_coeffs_direct,
    node_measurement,
    magnitude_measurement,
)
from widesense.sampler.reference import (
    AliasingCheck,
    hold_response,
    timedomain_reference,
    selftest_aliasing,
)
