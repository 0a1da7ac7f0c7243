"""Python bindings for the prodset C++ library."""

from ._core import (
    ConfigError,
    DescriptorMismatch,
    Error,
    PeriodicIntSet,
    ResourceCapExceeded,
    ball,
    cylinder_harmonic,
    exact_min_cover,
    inverse,
    multiply,
    refute_syndeticity,
    run_experiment,
    syndeticity_index,
    theorem2_audit,
    verify_certificate,
    version,
)

__all__ = [
    "ConfigError",
    "DescriptorMismatch",
    "Error",
    "PeriodicIntSet",
    "ResourceCapExceeded",
    "ball",
    "cylinder_harmonic",
    "exact_min_cover",
    "inverse",
    "multiply",
    "refute_syndeticity",
    "run_experiment",
    "syndeticity_index",
    "theorem2_audit",
    "verify_certificate",
    "version",
]
