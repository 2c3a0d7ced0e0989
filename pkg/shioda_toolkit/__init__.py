"""
Shioda Toolkit

Exact computations for Shioda maps of invertible polynomials: weights,
Calabi-Yau conditions, quotient groups, Shioda quotient equations,
birational fingerprints and explicit monomial inverses.
"""

__version__ = "1.0.0"
