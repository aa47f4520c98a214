"""Ordinal analysis toolkit: notations, finitary and infinitary proofs, cut elimination."""

__version__ = "0.1.0"
