"""Symbolic calculator for the block combinatorics of packets of p-adic
quasisplit symplectic and orthogonal groups."""

__version__ = "0.1.0"
