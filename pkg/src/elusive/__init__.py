"""Elusivity of classical groups acting on cosets of almost simple
irreducible subgroups, with brute-force oracles for small cases."""

__version__ = "0.1.0"
