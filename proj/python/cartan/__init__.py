"""Modular Lie algebras of Cartan type and their symmetric invariants."""

from ._cartan import (
    Algebra,
    BudgetExceeded,
    CartanError,
    FormatError,
    ParameterError,
    Polynomial,
    ad,
    binom_mod,
    check_generator,
    compute_delta,
    conjecture_sweep,
    d_delta,
    delta_star,
    independence,
    is_invariant,
    lambda_homogeneity,
)

__all__ = [
    "Algebra",
    "BudgetExceeded",
    "CartanError",
    "FormatError",
    "ParameterError",
    "Polynomial",
    "ad",
    "binom_mod",
    "check_generator",
    "compute_delta",
    "conjecture_sweep",
    "d_delta",
    "delta_star",
    "independence",
    "is_invariant",
    "lambda_homogeneity",
]
