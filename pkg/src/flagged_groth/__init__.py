"""Flagged and flagged-skew Grothendieck polynomials, computed by independent routes."""

from .polyring import (
    Polynomial,
    TruncationPolicy,
    divided_difference,
    generalized_binomial,
    mul,
    shift_vars,
    specialize_beta_zero,
    substitute_zero,
)

__version__ = "0.1.0"
