"""Exact computations with bipartite maps on arbitrary surfaces and Jack characters."""

__version__ = "0.1.0"
