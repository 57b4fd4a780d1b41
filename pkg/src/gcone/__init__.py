"""Exact toolkit for reflexive Gorenstein cones."""

__version__ = "0.1.0"
