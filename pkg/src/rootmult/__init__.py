"""Exact multiplicities of known roots from leading polynomial coefficients."""

__version__ = "0.1.0"
