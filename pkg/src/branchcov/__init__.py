"""Exact construction and verification of branched coverings at desk scale."""

__version__ = "0.1.0"
