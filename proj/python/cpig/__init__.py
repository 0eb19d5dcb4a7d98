"""Cumulative past information generating function toolkit."""

from ._core import *  # noqa: F401,F403
from ._core import CpigError, Distribution, __doc__  # noqa: F401

__version__ = "0.1.0"
