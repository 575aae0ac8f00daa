"""Constacyclic codes built from two-class cyclotomic coset structures."""

__version__ = "0.1.0"
