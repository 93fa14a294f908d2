"""Exact classification of unramified tori and twisted (generalized) Levis."""

__version__ = "0.1.0"
