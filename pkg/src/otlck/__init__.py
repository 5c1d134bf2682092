"""Certified number-field tools for LCK questions on Oeljeklaus-Toma manifolds."""

__version__ = "0.1.0"
