"""Exact rational verification of partial-vertex-cover integrality gaps.

Everything numeric in this package is an exact rational: LP optima, moment
values, matrix pivots, eigenvalues along symmetric directions.  Floating
point never enters a verdict.
"""

__version__ = "0.1.0"

from .rational import BACKEND, Rat, parse_rational, rational_str

__all__ = ["__version__", "BACKEND", "Rat", "parse_rational", "rational_str"]
