"""Hyperspherical trigonometry, generalized Jacobi elliptic functions and
the integrable tops built on them."""

__version__ = "0.1.0"
