"""Integral cohomology of finite polycyclic-presented groups."""

__version__ = "0.1.0"
