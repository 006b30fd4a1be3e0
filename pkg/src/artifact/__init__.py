"""Exact and numerical verification toolkit for Howe duality of compact dual pairs."""

__version__ = "0.1.0"
