"""Exact computer algebra for differential symmetric signatures."""

__version__ = "0.1.0"
