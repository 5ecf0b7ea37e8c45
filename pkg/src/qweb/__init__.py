"""Exact computations with type A, BD and C webs over Q(q)."""

__version__ = "0.1.0"
