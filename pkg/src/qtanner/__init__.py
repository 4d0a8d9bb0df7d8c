"""Quantum Tanner codes on square complexes, with Galois lifts via
permutation voltages."""

__version__ = "0.1.0"
