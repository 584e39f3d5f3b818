"""Feynman checkers: amplitudes of the 1D lattice Dirac walk by several routes."""

__version__ = "0.1.0"
