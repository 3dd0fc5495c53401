"""Convolution bodies of convex sets: θ-convolution, limiting and polar
projection bodies, and numerical checks of the associated inequalities."""

from ._convbody import *  # noqa: F401,F403
from ._convbody import __version__  # noqa: F401
