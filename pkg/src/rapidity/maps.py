"""The isomorphisms between relativistic and Newtonian velocity addition.

For each ``k > 0``::

    alpha(u) = k ln((c + u) / (c - u)) = 2k atanh(u / c)
    beta(x)  = c (e**(x/k) - 1) / (e**(x/k) + 1) = c tanh(x / 2k)

carry ``((-c, c), *)`` onto ``(R, +)`` and back.  Both are evaluated through
the velocity gap so that neither loses precision near ``+-c`` nor overflows for
large rapidities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rapidity.errors import InvalidInput
from rapidity.quadrature import integrate
from rapidity.velocity import (
    BELOW_ONE,
    IsoParams,
    Velocity,
    _check_finite,
)

DEFAULT_PARAMS = IsoParams()

# Above this |beta| the proof's integrand is integrated in a log-gap variable.
_SUBSTITUTION_THRESHOLD = 1.0 - 1e-6


@dataclass(frozen=True, slots=True)
class Rapidity:
    """An element of the Newtonian group ``(R, +)``; dimensionless."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _check_finite("value", self.value))

    def __add__(self, other: Rapidity) -> Rapidity:
        return Rapidity(self.value + other.value)

    def __neg__(self) -> Rapidity:
        return Rapidity(-self.value)


def _log_ratio(u: Velocity) -> float:
    """``ln((1 + |beta|) / (1 - |beta|))`` without cancellation."""
    b = abs(u.beta)
    if b < 0.5:
        return math.log1p(b) - math.log1p(-b)
    return math.log1p(b) - math.log(u.gap)


def alpha(u: Velocity, p: IsoParams = DEFAULT_PARAMS) -> Rapidity:
    # sign applied last so that alpha(-u) == -alpha(u) bit-for-bit
    return Rapidity(math.copysign(p.k * _log_ratio(u), u.beta))


def beta_inv(x: Rapidity, p: IsoParams = DEFAULT_PARAMS) -> Velocity:
    """Inverse of :func:`alpha`: ``tanh(x / 2k)`` with an accurate gap.

    Rapidities beyond the double range of ``tanh`` come back clamped to
    :data:`BELOW_ONE` with ``saturated`` set; the gap still records how close
    to light speed the value is, down to the subnormal range.
    """
    t = x.value / (2.0 * p.k)
    a = abs(t)
    e = math.exp(-2.0 * a)
    gap = 2.0 * e / (1.0 + e)
    mag = math.tanh(a)
    saturated = False
    if mag >= 0.5:
        mag = 1.0 - gap
    if mag >= 1.0:
        mag = BELOW_ONE
        saturated = True
    if gap <= 0.0:
        gap = math.ulp(0.0)
        saturated = True
    return Velocity(math.copysign(mag, t), min(gap, 1.0), saturated)


def k_from_slope(alpha_prime_at_zero: float, c: float) -> float:
    """The scale ``k`` of the isomorphism whose slope at rest is given.

    ``alpha(u) = k ln((c + u)/(c - u))`` has ``alpha'(0) = 2k / c``, hence
    ``k = c alpha'(0) / 2``.
    """
    s = _check_finite("alpha_prime_at_zero", alpha_prime_at_zero)
    c = _check_finite("c", c)
    if s <= 0:
        raise InvalidInput(f"alpha'(0) must be > 0, got {s!r}")
    if c <= 0:
        raise InvalidInput(f"c must be > 0, got {c!r}")
    return 0.5 * c * s


def alpha_prime(v: Velocity, p: IsoParams = DEFAULT_PARAMS) -> float:
    """``d alpha / du`` in physical velocity units: ``c**2 alpha'(0) / (c**2 - v**2)``."""
    return alpha_prime_beta(v, p) / p.c


def alpha_prime_beta(v: Velocity, p: IsoParams = DEFAULT_PARAMS) -> float:
    """``d alpha / d beta = 2k / (1 - beta**2)``."""
    return 2.0 * p.k / (v.one_minus() * v.one_plus())


def alpha_via_quadrature(
    u: Velocity,
    p: IsoParams = DEFAULT_PARAMS,
    tol: float = 1e-10,
    max_evals: int = 10**6,
) -> Rapidity:
    """Rebuild ``alpha(u)`` by integrating its derivative from rest.

    ``alpha(u) = c**2 alpha'(0) * integral_0^u dv / (c**2 - v**2)``.  Close to
    light speed the substitution ``v = c (1 - exp(-s))`` turns the integrand
    into the bounded ``1 / (c (2 - exp(-s)))`` on ``[0, -ln(gap)]``.
    """
    if not tol > 0:
        raise InvalidInput(f"tol must be > 0, got {tol!r}")
    c = p.c
    scale = c * c * (2.0 * p.k / c)  # c**2 alpha'(0)
    inner_tol = tol / scale
    if abs(u.beta) <= _SUBSTITUTION_THRESHOLD:
        upper = abs(u.beta) * c
        value, _ = integrate(
            lambda v: 1.0 / ((c - v) * (c + v)), 0.0, upper, inner_tol, max_evals
        )
    else:
        upper = -math.log(u.gap)
        value, _ = integrate(
            lambda s: 1.0 / (c * (2.0 - math.exp(-s))), 0.0, upper, inner_tol, max_evals
        )
    return Rapidity(math.copysign(scale * value, u.beta))


def compose_via_rapidity(
    u: Velocity, v: Velocity, p: IsoParams = DEFAULT_PARAMS
) -> Velocity:
    """``beta(alpha(u) + alpha(v))``; equals ``compose_sr(u, v)`` for every k."""
    return beta_inv(alpha(u, p) + alpha(v, p), p)
