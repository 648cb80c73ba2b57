"""Exact verification of hook-length product formulas over partitions."""

__version__ = "0.1.0"
