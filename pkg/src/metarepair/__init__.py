"""Semantics-preserving Java transformations and an APR evaluation harness."""

__version__ = "0.1.0"
