"""Modular-variable dynamics of separated wave packets."""

from ._modvar import (
    BathParams,
    CompanionState,
    ConfigError,
    DomainError,
    Framework,
    GaussianPacket,
    ModularClosedForm,
    ParameterError,
    PhysicalConstants,
    Statistics,
    SuperpositionSpec,
    cl_current,
    cl_density,
    cl_modular_closed,
    cl_modular_quadrature,
    generate_figure,
    make_superposition,
    modular_expectation,
    modular_indistinguishable,
    modular_mb,
    overlap_window,
    reduced_modular_common_bath,
    scaled_time_tau,
)

__all__ = [name for name in dir() if not name.startswith("_")]
