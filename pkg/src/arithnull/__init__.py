"""Exact arithmetic toolkit for effective Nullstellensatz computations over Q."""

__version__ = "0.1.0"
