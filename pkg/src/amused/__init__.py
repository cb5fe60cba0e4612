"""Fact-check article harvesting, label propagation, and human verification."""

__version__ = "0.1.0"
