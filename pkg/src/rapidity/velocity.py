"""Velocity types and the composition laws of one-dimensional kinematics.

Velocities are stored as the dimensionless ``beta = u / c``.  Next to ``beta``
every :class:`Velocity` carries ``gap = 1 - |beta|`` computed without
cancellation, so that values within a few ulps of light speed keep their full
relative precision.  ``beta`` alone cannot do this: above ``1 - 2**-53`` every
double rounds to ``1.0``.

The relativistic law ``(u + v) / (1 + u v)`` is evaluated from those gaps
whenever the operands have opposite signs, which is where the literal formula
loses digits to cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from rapidity.errors import DomainError, InvalidInput

DEFAULT_TOL = 1e-12

#: Largest double strictly below one; the clamp target for saturated results.
BELOW_ONE = math.nextafter(1.0, 0.0)

# Below this magnitude ``beta`` itself is the better-conditioned representation.
_GAP_REGION = 0.5


def _check_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True, slots=True)
class Velocity:
    """A speed strictly inside ``(-c, c)``, normalized to ``beta = u / c``.

    ``gap`` defaults to ``1 - |beta|``.  Operations that know the distance to
    light speed more accurately than ``beta`` does pass it explicitly.
    ``saturated`` marks a result whose ``beta`` rounded onto ``+-1`` and was
    clamped to :data:`BELOW_ONE`.  Equality and hashing only look at ``beta``.
    """

    beta: float
    gap: float = field(default=None, compare=False, repr=False)
    saturated: bool = field(default=False, compare=False)

    def __post_init__(self):
        beta = _check_finite("beta", self.beta)
        if not -1.0 < beta < 1.0:
            raise DomainError(f"|beta| must be < 1, got {beta!r}")
        object.__setattr__(self, "beta", beta)
        if self.gap is None:
            object.__setattr__(self, "gap", 1.0 - abs(beta))
        elif not 0.0 < self.gap <= 1.0:
            raise InvalidInput(f"gap must lie in (0, 1], got {self.gap!r}")

    def widen(self) -> ExtendedVelocity:
        return ExtendedVelocity(self.beta)

    def physical(self, c: float = 1.0) -> float:
        return self.beta * c

    def one_minus(self) -> float:
        """``1 - beta`` without cancellation."""
        if self.beta >= _GAP_REGION:
            return self.gap
        return 1.0 - self.beta

    def one_plus(self) -> float:
        """``1 + beta`` without cancellation."""
        if self.beta <= -_GAP_REGION:
            return self.gap
        return 1.0 + self.beta

    def exact(self) -> Fraction:
        """The rational number this velocity stands for.

        In the gap region the value is ``+-(1 - gap)`` rather than ``beta``,
        which may have been rounded or clamped.
        """
        if abs(self.beta) >= _GAP_REGION:
            mag = 1 - Fraction(self.gap)
            return mag if self.beta > 0 else -mag
        return Fraction(self.beta)

    def order_key(self) -> tuple[int, float]:
        """Sort key consistent with the exact value, including saturated ones."""
        if self.beta >= _GAP_REGION:
            return (1, -self.gap)
        if self.beta <= -_GAP_REGION:
            return (-1, self.gap)
        return (0, self.beta)


@dataclass(frozen=True, slots=True)
class ExtendedVelocity:
    """A speed in the closed interval ``[-c, c]``; light speed is admissible."""

    beta: float

    def __post_init__(self):
        beta = _check_finite("beta", self.beta)
        if not -1.0 <= beta <= 1.0:
            raise DomainError(f"|beta| must be <= 1, got {beta!r}")
        object.__setattr__(self, "beta", beta)

    @property
    def is_light(self) -> bool:
        return abs(self.beta) == 1.0

    def narrow(self) -> Velocity:
        if self.is_light:
            raise DomainError("light speed is not in the open interval (-c, c)")
        return Velocity(self.beta)


@dataclass(frozen=True, slots=True)
class NewtonVelocity:
    """A Newtonian velocity in physical units; any finite real is allowed."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _check_finite("value", self.value))


@dataclass(frozen=True, slots=True)
class IsoParams:
    """Light speed ``c`` and the scale ``k`` of the rapidity isomorphism."""

    c: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        c = _check_finite("c", self.c)
        k = _check_finite("k", self.k)
        if c <= 0:
            raise InvalidInput(f"c must be > 0, got {c!r}")
        if k <= 0:
            raise InvalidInput(f"k must be > 0, got {k!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "k", k)


def _finish(beta: float, gap: float) -> Velocity:
    """Build a result from a computed ``beta`` and its accurate ``gap``."""
    saturated = False
    if gap <= 0.0:
        gap = math.ulp(0.0)
        saturated = True
    elif gap > 1.0:
        gap = 1.0
    if abs(beta) >= _GAP_REGION:
        beta = math.copysign(1.0 - gap, beta)
    if abs(beta) >= 1.0:
        beta = math.copysign(BELOW_ONE, beta)
        saturated = True
    return Velocity(beta, gap, saturated)


def from_fraction(x: Fraction) -> Velocity:
    """Round an exact rational in ``(-1, 1)`` to a :class:`Velocity`."""
    if not -1 < x < 1:
        raise DomainError(f"|beta| must be < 1, got {float(x)!r}")
    return _finish(float(x), float(1 - abs(x)))


def make_velocity(value: float, c: float = 1.0) -> Velocity:
    """Normalize a physical speed ``value`` against light speed ``c``."""
    value = _check_finite("value", value)
    c = _check_finite("c", c)
    if c <= 0:
        raise InvalidInput(f"c must be > 0, got {c!r}")
    if abs(value) >= c:
        raise DomainError(f"|{value!r}| >= c = {c!r}")
    return _finish(value / c, (c - abs(value)) / c)


def identity_sr() -> Velocity:
    return Velocity(0.0)


def inverse(u: Velocity) -> Velocity:
    return Velocity(-u.beta, u.gap, u.saturated)


def _denominator(u: Velocity, v: Velocity) -> float:
    # 1 + uv.  For opposite signs 1 - |u||v| = gu + gv - gu*gv, all terms exact
    # or relatively accurate.  Both forms are symmetric in (u, v) bit-for-bit.
    if u.beta * v.beta >= 0.0:
        return 1.0 + u.beta * v.beta
    return u.gap + v.gap - u.gap * v.gap


def compose_sr(u: Velocity, v: Velocity) -> Velocity:
    """Relativistic velocity addition ``(u + v) / (1 + u v / c**2)``."""
    den = _denominator(u, v)
    if u.beta * v.beta >= 0.0:
        num = u.beta + v.beta
    else:
        pos, neg = (u, v) if u.beta > 0.0 else (v, u)
        if pos.beta >= _GAP_REGION and neg.beta <= -_GAP_REGION:
            num = neg.gap - pos.gap
        else:
            num = u.beta + v.beta
    beta = num / den
    if beta == 0.0:
        return Velocity(0.0)
    if beta > 0.0:
        gap = u.one_minus() * v.one_minus() / den
    else:
        gap = u.one_plus() * v.one_plus() / den
    if beta == u.beta and v.beta == 0.0:
        return Velocity(u.beta, u.gap)
    if beta == v.beta and u.beta == 0.0:
        return Velocity(v.beta, v.gap)
    return _finish(beta, gap)


def compose_naive(u: float, v: float) -> float:
    """The literal double-precision formula, clamped into ``(-1, 1)``.

    Kept as the contrast case for stability comparisons; use
    :func:`compose_sr` for real work.
    """
    r = (u + v) / (1.0 + u * v)
    if abs(r) >= 1.0:
        r = math.copysign(BELOW_ONE, r)
    return r


def compose_sr3(u: Velocity, v: Velocity, w: Velocity) -> Velocity:
    """Three-fold composition from the closed three-velocity formula.

    ``(u + v + w + u v w) / (1 + u v + u w + v w)`` is evaluated in exact
    rational arithmetic and rounded once; in doubles its denominator cancels
    catastrophically for mixed-sign operands near the boundary.
    """
    a, b, d = u.exact(), v.exact(), w.exact()
    num = a + b + d + a * b * d
    den = 1 + a * b + a * d + b * d
    return from_fraction(num / den)


def compose_newton(x: NewtonVelocity, y: NewtonVelocity) -> NewtonVelocity:
    s = x.value + y.value
    if not math.isfinite(s):
        raise OverflowError(f"{x.value!r} + {y.value!r} is not a finite real")
    return NewtonVelocity(s)


def partial_derivative_sr(u: Velocity, v: Velocity) -> float:
    """``d(u * v)/du = (1 - v**2) / (1 + u v)**2``; always positive."""
    den = _denominator(u, v)
    return v.one_minus() * v.one_plus() / (den * den)


def compose_extended(u: ExtendedVelocity, v: ExtendedVelocity) -> ExtendedVelocity:
    """Composition on ``[-c, c]**2`` minus the pairs with ``u v = -c**2``.

    Light speed is absorbing: any admissible pair containing ``+-1`` yields
    that same ``+-1``.
    """
    if u.beta * v.beta == -1.0:
        raise DomainError(
            f"excluded pair (u, v) = ({u.beta!r}, {v.beta!r}): u v = -c**2"
        )
    if u.is_light:
        return ExtendedVelocity(u.beta)
    if v.is_light:
        return ExtendedVelocity(v.beta)
    return compose_sr(u.narrow(), v.narrow()).widen()


def close(a: Velocity, b: Velocity, tol: float = DEFAULT_TOL) -> bool:
    return abs(a.beta - b.beta) <= tol
