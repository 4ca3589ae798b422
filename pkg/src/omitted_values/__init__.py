"""Extremal constants for holomorphic maps of the disk omitting 0 and 1.

Exact word and trace arithmetic in the level-2 congruence group, minimal
traces by enumeration, harmonic measure by alternating Schwarz iteration, and
the Lame-equation construction of the extremal covering map.
"""
from .errors import ConvergenceError, DomainError
from .words import *  # noqa: F401,F403
from .traces import *  # noqa: F401,F403
from .enumeration import *  # noqa: F401,F403
from .hyperbolic import *  # noqa: F401,F403
from .schwarz import *  # noqa: F401,F403
from .extremal import *  # noqa: F401,F403
from .special import *  # noqa: F401,F403
from .lame import *  # noqa: F401,F403
from . import enumeration, extremal, hyperbolic, lame, schwarz, special, traces, words

__version__ = "0.1.0"
