"""Exact computations for stratifying systems and Cartan matrices of
tau-tilting modules over bound quiver algebras."""

__version__ = "0.1.0"
