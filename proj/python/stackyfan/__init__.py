"""Exact computations for toric orbifolds given by weighted fans and polytopes.

Integers are Python ints and rationals are ``fractions.Fraction``; inputs
also accept ``"p/q"`` strings. Library errors raise ``StackyfanError`` whose
message starts with the error code, for example ``"NotIntegral: ..."``.
"""

from ._stackyfan import *  # noqa: F401,F403
from ._stackyfan import StackyfanError, WeightedFan, Polytope  # noqa: F401

__version__ = "0.1.0"
