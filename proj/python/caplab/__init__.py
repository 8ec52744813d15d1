"""Symplectic capacities of convex bodies and their p-products."""

from ._caplab import *  # noqa: F401,F403
from ._caplab import __doc__  # noqa: F401
