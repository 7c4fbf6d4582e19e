"""Exact numerics for moduli of sheaves on elliptic surfaces: Euler pairings,
dimension counts, wall enumeration, reduction certificates and Hodge numbers
of Hilbert schemes."""

__version__ = "0.1.0"
