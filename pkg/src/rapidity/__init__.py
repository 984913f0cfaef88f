"""Relativistic velocity addition and its isomorphisms onto (R, +)."""

from rapidity.errors import (
    ConvergenceError,
    DomainError,
    EmptyInput,
    InvalidInput,
    RapidityError,
)
from rapidity.maps import (
    Rapidity,
    alpha,
    alpha_prime,
    alpha_prime_beta,
    alpha_via_quadrature,
    beta_inv,
    compose_via_rapidity,
    k_from_slope,
)
from rapidity.velocity import (
    ExtendedVelocity,
    IsoParams,
    NewtonVelocity,
    Velocity,
    compose_extended,
    compose_newton,
    compose_sr,
    compose_sr3,
    identity_sr,
    inverse,
    make_velocity,
    partial_derivative_sr,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "EmptyInput",
    "ExtendedVelocity",
    "InvalidInput",
    "IsoParams",
    "NewtonVelocity",
    "Rapidity",
    "RapidityError",
    "Velocity",
    "alpha",
    "alpha_prime",
    "alpha_prime_beta",
    "alpha_via_quadrature",
    "beta_inv",
    "compose_extended",
    "compose_newton",
    "compose_sr",
    "compose_sr3",
    "compose_via_rapidity",
    "identity_sr",
    "inverse",
    "k_from_slope",
    "make_velocity",
    "partial_derivative_sr",
]
