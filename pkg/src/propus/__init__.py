"""Search and verification tools for symmetric Hadamard matrices of propus type."""

__version__ = "0.1.0"
