"""Hyperspherical prototypes from linear block codes, closed forms and optimization."""

__version__ = "0.1.0"
