"""Hahn multiple orthogonal polynomials and their multiple Askey scheme descendants."""

__version__ = "0.1.0"
