"""Exact-arithmetic toolkit for parity and lower bounds of the dual Selmer
rank over the p-division tower of a rational elliptic curve."""

__version__ = "0.1.0"
