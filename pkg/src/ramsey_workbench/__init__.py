"""Verification and exact-search workbench for Ramsey numbers of cycles versus fans."""

__version__ = "0.1.0"
