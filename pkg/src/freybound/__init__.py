"""Exact tools for effective irreducibility bounds attached to x^p + y^p = z^r."""

__version__ = "0.1.0"
