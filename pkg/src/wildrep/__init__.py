"""Exact combinatorial invariants of irregular classes on the Riemann sphere."""
__version__ = "0.1.0"
