"""Exact combinatorics of spherical systems for adjoint groups of type A and D."""

__version__ = "0.1.0"
