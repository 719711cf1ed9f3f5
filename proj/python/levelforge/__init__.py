"""Exact computations with rank-p group scheme level structures."""

from _levelforge import (
    constant_iso_verified,
    fiber_rank,
    g3_rank,
    gl2_invariance,
    groebner_basis,
    km_vs_primitive,
    kmd_rank,
    partial_rank,
    quotient_dimension,
    s_independence,
    solve_group_constants,
    stack_counterexample,
    teichmuller,
    truncated_rank,
    unit_factorization,
    verify_flatness,
)

__all__ = [
    "constant_iso_verified",
    "fiber_rank",
    "g3_rank",
    "gl2_invariance",
    "groebner_basis",
    "km_vs_primitive",
    "kmd_rank",
    "partial_rank",
    "quotient_dimension",
    "s_independence",
    "solve_group_constants",
    "stack_counterexample",
    "teichmuller",
    "truncated_rank",
    "unit_factorization",
    "verify_flatness",
]

__version__ = "0.1.0"
