"""Asymptotic solutions of the logistic map near its first period doubling.

Two settings are covered: a fixed parameter lambda = 3 + eps and a slowly
swept one lambda = 3 + eps^2 n, both started from x(0) = 2/3.
"""

from .errors import AsymlogError
from .maps import MapKind, MapSpec, iterate

__version__ = "0.1.0"
__all__ = ["AsymlogError", "MapKind", "MapSpec", "iterate", "__version__"]
