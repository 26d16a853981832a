"""Exact analysis of binary-input/binary-output non-signaling boxes."""

from ._core import *  # noqa: F401,F403
from ._core import BoxError, ParseError, __doc__  # noqa: F401

__version__ = "0.1.0"
