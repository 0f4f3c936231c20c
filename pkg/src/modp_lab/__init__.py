"""Exact combinatorics and graded algebra for mod p Serre weights of GL_2."""

__version__ = "0.1.0"
