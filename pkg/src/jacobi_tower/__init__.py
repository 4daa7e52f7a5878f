"""Exact q-expansions of weak Jacobi forms for the D8 tower of root lattices."""

__version__ = "0.1.0"
