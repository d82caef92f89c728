"""Nonhomogeneous quadratic duality by exact linear algebra."""

__version__ = "0.1.0"
