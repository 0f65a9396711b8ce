"""Finite-difference lab for -Delta u + g(u) = mu with measure data."""

from ._core import (
    Check,
    ConvergenceError,
    Domain,
    Measure,
    Nonlinearity,
    brezis_merle_bound,
    capacitary_potential,
    check_kato,
    exponential_integral,
    frostman_check,
    greedy_decompose,
    hausdorff_cover,
    omega,
    reduced_measure,
    solve_linear,
    solve_nonlinear,
    threshold_scan_exponential,
)

__all__ = [
    "Check",
    "ConvergenceError",
    "Domain",
    "Measure",
    "Nonlinearity",
    "brezis_merle_bound",
    "capacitary_potential",
    "check_kato",
    "exponential_integral",
    "frostman_check",
    "greedy_decompose",
    "hausdorff_cover",
    "omega",
    "reduced_measure",
    "solve_linear",
    "solve_nonlinear",
    "threshold_scan_exponential",
]
