"""Exact classical knot invariants, strong coprimality, and certificates for
doubling-operator knot families."""

__version__ = "0.1.0"
