"""Exact computer algebra for standard stable Horikawa surfaces."""

__version__ = "0.1.0"
