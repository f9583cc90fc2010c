"""Finite-group computations for odd-degree character and class-number bounds."""

__version__ = "0.1.0"
