"""Pair-of-pants decompositions from tropical data: exact polyhedra, angle complexes and gluing."""

__version__ = "0.1.0"
