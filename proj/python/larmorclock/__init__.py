"""Spin-orbit Larmor clock: strong-field and one-photon ionisation delays."""

from ._larmorclock import *  # noqa: F401,F403
from ._larmorclock import __version__  # noqa: F401
