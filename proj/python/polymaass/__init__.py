"""Eisenstein series of weight k for PSL(2, Z), their completions and s-Taylor coefficients.

Evaluation functions return (value, abs_error_estimate, method).
"""

from ._polymaass import (
    AccuracyError,
    DegenerateParameter,
    DomainError,
    Error,
    OverflowError,
    PoleError,
    TailError,
    ZeroArgument,
    completed_eval,
    completion_factor,
    constant_term,
    doubly_completed_eval,
    eisenstein_E,
    expansion_json,
    fourier_coefficient,
    lattice_sum_E,
    run_suite,
    suite_names,
    taylor_coeffs,
    whittaker_w,
)

__version__ = "0.1.0"
