"""Exact discrete Hodge theory and L^2 end formulas for flat-ended manifolds."""

__version__ = "0.1.0"
