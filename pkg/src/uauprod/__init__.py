"""Exact computations with universal products of linear functionals and their cumulants."""

from .functionals import Functional, Substitution, TruncationError
from .partitions import LabelledPartition
from .products import CoefficientTable, Product, ProductSpec
from .scalars import Poly
from .words import Letter

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable",
    "Functional",
    "LabelledPartition",
    "Letter",
    "Poly",
    "Product",
    "ProductSpec",
    "Substitution",
    "TruncationError",
]
