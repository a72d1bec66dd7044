"""Mahler measures, hyperbolic volumes and A-polynomial identities."""
__version__ = "0.1.0"
