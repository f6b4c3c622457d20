"""Landé g-factors of H2+ hyperfine levels and Zeeman shifts of two-photon lines."""

__version__ = "0.1.0"
