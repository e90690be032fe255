"""Exact verification toolkit for algebraic (bornological) quantum groups."""

__version__ = "0.1.0"
