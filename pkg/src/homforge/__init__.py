"""homforge: homomorphism polynomial compiler and finite-field counting toolkit."""

__version__ = "0.1.0"
