"""Exact computations around nilpotent commuting varieties of gl_n."""

__version__ = "0.1.0"
