"""Exact q-series computations and congruence checks for (u,v)-regular bipartitions."""

__version__ = "0.1.0"
