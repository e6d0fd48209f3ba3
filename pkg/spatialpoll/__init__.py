"""Spatial polling on a circle with a greedy myopic server."""

__version__ = "0.1.0"
