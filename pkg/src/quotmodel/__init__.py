"""Exact matrix models of Quot schemes of affine space and framed sheaves on P^2."""

__version__ = "0.1.0"
