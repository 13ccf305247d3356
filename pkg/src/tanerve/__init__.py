"""Exact computations with the templicial A-infinity nerve."""

__version__ = "0.1.0"
