"""Distance covariance with a general exponent, backed by a C++ core."""

from ._core import (
    DomainError,
    InputError,
    c_const,
    c_gauss,
    classify,
    consistency_sweep,
    dcor,
    dcov,
    dcov_exact,
    num_threads,
    perm_test,
    set_num_threads,
    tail_diagnostic,
)

__all__ = [
    "DomainError",
    "InputError",
    "c_const",
    "c_gauss",
    "classify",
    "consistency_sweep",
    "dcor",
    "dcov",
    "dcov_exact",
    "num_threads",
    "perm_test",
    "set_num_threads",
    "tail_diagnostic",
]
