"""Finite-section laboratory for operators on model-space complements."""

__version__ = "0.1.0"
