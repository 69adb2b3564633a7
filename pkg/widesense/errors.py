#!/usr/bin/env python3

""" Exceptions raised by widesense """


class WidesenseError(Exception):
    """Base class of all widesense specific exceptions."""


class ConfigError(WidesenseError, ValueError):
    """Invalid spectrum partition, experiment configuration or command line
    override."""


class CombinatorialGuardError(ConfigError):
    """The brute force oracle would have to enumerate too many supports."""


class NumericalError(WidesenseError, ArithmeticError):
    """A numerical result violates an invariant it must satisfy (e.g. a
    measurement that should be real has a large imaginary part)."""
