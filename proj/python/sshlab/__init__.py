"""Hybrid SSH chain with an embedded PT-symmetric segment."""

from ._sshlab import *  # noqa: F401,F403
from ._sshlab import ComputationError, ValidationError, __doc__  # noqa: F401

__version__ = "0.1.0"
