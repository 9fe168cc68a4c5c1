"""Discriminants and index divisors of f(x) = (x^2 + 1)^n - a*x^n."""

__version__ = "0.1.0"
