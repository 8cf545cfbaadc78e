"""Radius selection for correlation-sum nonlinear measures.

Reference-rule radii, Grassberger-Procaccia correlation dimension and
K2 entropy estimation on top of the C++ core.
"""

from ._nlrad import *  # noqa: F401,F403
from ._nlrad import __version__  # noqa: F401
