"""Cayley digraphs of dihedral groups: normality and the CI-property."""

__version__ = "0.1.0"
