"""Schwarzian univalence criteria for holomorphic curves in C^n."""

from ._core import (
    ConfigError,
    DomainError,
    HoloCurve,
    NehariFunction,
    NumericalError,
    Profile,
    builtin_curves,
    conformal_data,
    covering_bound,
    disconjugacy_count,
    disk_samples,
    extremal_profile,
    extremality_margin,
    identity_suite,
    injectivity_scan,
    intrinsic_min_distance,
    lemma7_check,
    normalize,
    run,
    scan,
    validate_nehari,
)

__all__ = [name for name in dir() if not name.startswith("_")]
