"""Statevector reconstruction of a GHZ-based Wigner's-friend scenario and a
two-route proof that its relative-fact parity constraints are unsatisfiable."""

__version__ = "0.1.0"
