"""Vector-valued Siegel modular forms of degree two and weight (k, 2)."""

__version__ = "0.1.0"
