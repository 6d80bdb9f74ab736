"""Exact computer algebra for graded bracket structures on free module resolutions."""

__version__ = "0.1.0"
