"""Zeros of random Kac polynomials."""

from ._kaczeros import (
    ConvergenceFailure,
    NumericFailure,
    c_lambda,
    check_envelope,
    circle_sup,
    dbl_distance,
    density_oracle_compare,
    expand_from_roots,
    find_roots,
    gamma_n,
    law,
    ldp_ratio_scan,
    log_energy,
    log_joint_density,
    rate_I,
    rate_I_alpha,
    rate_I_compactified,
    real_fraction,
    roots_of_unity,
    run_convergence_scan,
    sample_coeffs,
    sandwich_log_ratio,
    vector_norm,
)

__all__ = [
    "ConvergenceFailure",
    "NumericFailure",
    "c_lambda",
    "check_envelope",
    "circle_sup",
    "dbl_distance",
    "density_oracle_compare",
    "expand_from_roots",
    "find_roots",
    "gamma_n",
    "law",
    "ldp_ratio_scan",
    "log_energy",
    "log_joint_density",
    "rate_I",
    "rate_I_alpha",
    "rate_I_compactified",
    "real_fraction",
    "roots_of_unity",
    "run_convergence_scan",
    "sample_coeffs",
    "sandwich_log_ratio",
    "vector_norm",
]
