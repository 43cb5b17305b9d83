"""Decomposition engine for C4-free odd-signable graphs of bounded degree."""

__version__ = "0.1.0"
