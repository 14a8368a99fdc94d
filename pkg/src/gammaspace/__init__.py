"""Finite combinatorial checks for coherently commutative multiplicative
structure on quasi-categories: truncated simplicial sets, finite categories,
the based-finite-set calculus, convolution products, markings, and relative
nerves, with every claim exposed as an executable verdict."""

from .verdicts import Budget, BudgetExceededError, ResourceError, Verdict

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceededError",
    "ResourceError",
    "Verdict",
]
