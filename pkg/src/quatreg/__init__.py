"""Slice-regular quaternionic polynomials, their quotients and regular
fractional transformations, with zero sets and Moebius maps of the ball."""

from .errors import *  # noqa: F401,F403
from .quaternion import *  # noqa: F401,F403
from .series import *  # noqa: F401,F403
from .zeros import *  # noqa: F401,F403
from .quotient import *  # noqa: F401,F403
from .fractional import *  # noqa: F401,F403
from .sampling import *  # noqa: F401,F403
from . import jsonio, verify  # noqa: F401

__version__ = "0.1.0"
