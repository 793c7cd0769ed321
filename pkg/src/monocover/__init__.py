"""Covering numbers of monolithic groups with alternating socle."""

__version__ = "0.1.0"
