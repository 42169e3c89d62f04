"""Divisor classes, cones and moving-curve checks on Kontsevich moduli spaces of stable maps."""

__version__ = "0.1.0"
