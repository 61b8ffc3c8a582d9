"""Finite computations for monoid varieties: words, identities, Rees
quotient monoids, isoterms and bounded equational deduction."""

__version__ = "0.1.0"
