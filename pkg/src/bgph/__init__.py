"""Ordinary, bigraded and double-homology persistence of finite pseudo-metric spaces."""

from ._kernels import BACKEND
from .metric import PseudoMetricSpace, from_matrix, from_points

__version__ = "0.1.0"

__all__ = ["BACKEND", "PseudoMetricSpace", "from_matrix", "from_points", "__version__"]
