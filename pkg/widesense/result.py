#!/usr/bin/env python3

# std
from abc import ABC, abstractmethod

# ours
from widesense.util.log import get_logger


class AbstractResult(ABC):
    """The result object represents the outcome of running a
    :class:`~widesense.worker.AbstractWorker`.

    .. note::

        Results are not meant to be initialized by the user. Rather they are
        the return objects of the ``run`` methods of the workers.
    """

    def __init__(self):
        self.log = get_logger(type(self).__name__)

    @abstractmethod
    def write(self, *args, **kwargs):
        """Write the result out (e.g. to an output directory)."""
        pass
