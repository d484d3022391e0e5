"""Truncated Witt vector arithmetic, semilinear algebra and Cech
cohomology with Frobenius over finite fields."""

__version__ = "0.1.0"
