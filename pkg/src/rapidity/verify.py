"""Sampled verification of the group laws, with an extended-precision oracle.

Every check returns a :class:`CheckReport`; a failing law is data, not an
exception.  Samples are drawn uniformly in rapidity so that the region next
to light speed is exercised, then topped up with a deterministic grid of
points ``+-(1 - 10**-n)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from decimal import Decimal, localcontext
from typing import Callable, Sequence

import numpy as np

from rapidity.errors import DomainError, InvalidInput
from rapidity.maps import alpha, beta_inv, compose_via_rapidity, Rapidity
from rapidity.velocity import (
    DEFAULT_TOL,
    IsoParams,
    Velocity,
    compose_naive,
    compose_sr,
    identity_sr,
    inverse,
    partial_derivative_sr,
)

DEFAULT_HOMOMORPHISM_TOL = 1e-9

LAWS = (
    "associativity",
    "commutativity",
    "identity",
    "inverse",
    "homomorphism",
    "monotonicity",
    "limits",
)


@dataclass(frozen=True)
class SampleSpec:
    count: int = 10_000
    seed: int = 0
    boundary_margin: float = 1e-6
    include_edge_grid: bool = True

    def __post_init__(self):
        if self.count < 1:
            raise InvalidInput(f"count must be >= 1, got {self.count!r}")
        if not 0.0 < self.boundary_margin < 1.0:
            raise InvalidInput(
                f"boundary_margin must lie in (0, 1), got {self.boundary_margin!r}"
            )


@dataclass
class CheckReport:
    law_name: str
    samples_run: int
    max_abs_violation: float
    worst_case_inputs: list[float]
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.max_abs_violation <= self.tolerance

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def edge_grid(margin: float) -> list[Velocity]:
    """``0`` and ``+-(1 - 10**-n)`` for every n with ``10**-n >= margin``."""
    points = [Velocity(0.0)]
    n = 1
    while 10.0**-n >= margin:
        b = 1.0 - 10.0**-n
        points += [Velocity(b), Velocity(-b)]
        n += 1
    return points


def sample_velocities(spec: SampleSpec, shape: tuple[int, ...], stream: int = 0):
    """Rapidity-uniform samples with ``|beta| <= 1 - margin``, as an object array.

    ``stream`` selects an independent generator for the same seed, so each
    check draws its own reproducible sequence.
    """
    rng = np.random.default_rng([spec.seed & (2**64 - 1), stream])
    x_max = alpha(Velocity(1.0 - spec.boundary_margin)).value
    xs = rng.uniform(-x_max, x_max, size=shape)
    flat = [beta_inv(Rapidity(float(x))) for x in xs.ravel()]
    out = np.empty(len(flat), dtype=object)
    out[:] = flat
    return out.reshape(shape)


class _Worst:
    """Running maximum; ties keep the earliest sample."""

    def __init__(self):
        self.value = 0.0
        self.inputs: list[float] = []
        self.n = 0

    def add(self, violation: float, *inputs: Velocity) -> None:
        self.n += 1
        if violation > self.value or (not self.inputs and violation >= self.value):
            self.value = violation
            self.inputs = [v.beta for v in inputs]

    def report(self, name: str, tol: float) -> CheckReport:
        return CheckReport(name, self.n, self.value, self.inputs, tol)


def _tuples(spec: SampleSpec, arity: int, stream: int) -> list[tuple[Velocity, ...]]:
    rows = [tuple(r) for r in sample_velocities(spec, (spec.count, arity), stream)]
    if spec.include_edge_grid:
        grid = edge_grid(spec.boundary_margin)
        for idx in np.ndindex(*(len(grid),) * arity):
            rows.append(tuple(grid[i] for i in idx))
    return rows


def _singles(spec: SampleSpec, stream: int) -> list[Velocity]:
    rows = list(sample_velocities(spec, (spec.count,), stream))
    if spec.include_edge_grid:
        rows += edge_grid(spec.boundary_margin)
    return rows


def check_associativity(spec: SampleSpec, tol: float = DEFAULT_TOL) -> CheckReport:
    if not tol > 0:
        raise InvalidInput(f"tol must be > 0, got {tol!r}")
    worst = _Worst()
    for u, v, w in _tuples(spec, 3, stream=1):
        left = compose_sr(compose_sr(u, v), w)
        right = compose_sr(u, compose_sr(v, w))
        worst.add(abs(left.beta - right.beta), u, v, w)
    return worst.report("associativity", tol)


def check_commutativity(spec: SampleSpec) -> CheckReport:
    worst = _Worst()
    for u, v in _tuples(spec, 2, stream=2):
        a, b = compose_sr(u, v), compose_sr(v, u)
        worst.add(max(abs(a.beta - b.beta), abs(a.gap - b.gap)), u, v)
    return worst.report("commutativity", 0.0)


def check_identity(spec: SampleSpec) -> CheckReport:
    worst = _Worst()
    e = identity_sr()
    for u in _singles(spec, stream=3):
        worst.add(
            max(abs(compose_sr(u, e).beta - u.beta), abs(compose_sr(e, u).beta - u.beta)),
            u,
        )
    return worst.report("identity", 0.0)


def check_inverse(spec: SampleSpec) -> CheckReport:
    worst = _Worst()
    for u in _singles(spec, stream=4):
        w = inverse(u)
        worst.add(max(abs(compose_sr(u, w).beta), abs(compose_sr(w, u).beta)), u)
    return worst.report("inverse", 0.0)


def check_identity_inverse(spec: SampleSpec) -> CheckReport:
    """Both exact laws at once: ``u * 0 = 0 * u = u`` and ``u * (-u) = 0``."""
    a, b = check_identity(spec), check_inverse(spec)
    worst = a if a.max_abs_violation >= b.max_abs_violation else b
    return CheckReport(
        "identity_inverse",
        a.samples_run + b.samples_run,
        worst.max_abs_violation,
        worst.worst_case_inputs,
        0.0,
    )


def check_homomorphism(
    p: IsoParams, spec: SampleSpec, tol: float = DEFAULT_HOMOMORPHISM_TOL
) -> CheckReport:
    """``alpha(u * v) = alpha(u) + alpha(v)``, scaled by ``1 + |alpha(u)| + |alpha(v)|``."""
    if not tol > 0:
        raise InvalidInput(f"tol must be > 0, got {tol!r}")
    worst = _Worst()
    for u, v in _tuples(spec, 2, stream=5):
        au, av = alpha(u, p).value, alpha(v, p).value
        lhs = alpha(compose_sr(u, v), p).value
        worst.add(abs(lhs - au - av) / (1.0 + abs(au) + abs(av)), u, v)
    return worst.report("homomorphism", tol)


def check_monotonicity(spec: SampleSpec, n_fixed: int = 16) -> CheckReport:
    """Positive partial derivative, and ``u -> u * v`` strictly increasing.

    The ordering test sweeps the sorted first-operand samples for ``n_fixed``
    sampled values of the second operand.  Orders are compared on the exact
    value (through the gap), so saturated results still order correctly.
    """
    worst = _Worst()
    for u, v in _tuples(spec, 2, stream=6):
        worst.add(0.0 if partial_derivative_sr(u, v) > 0.0 else 1.0, u, v)

    us = sorted(_singles(spec, stream=7), key=Velocity.order_key)
    deduped = [us[0]]
    for u in us[1:]:
        if u.order_key() != deduped[-1].order_key():
            deduped.append(u)
    fixed = list(sample_velocities(spec, (min(n_fixed, spec.count),), stream=8))
    for v in fixed:
        prev_u = deduped[0]
        prev = compose_sr(prev_u, v).order_key()
        for u in deduped[1:]:
            cur = compose_sr(u, v).order_key()
            worst.add(0.0 if cur > prev else 1.0, prev_u, u, v)
            prev_u, prev = u, cur
    return worst.report("monotonicity", 0.0)


def limit_sequence(n_steps: int, sign: float = 1.0) -> list[Velocity]:
    """``u * u`` along ``u = sign * (1 - 10**-n)``, n = 1..n_steps."""
    return [
        compose_sr(Velocity(sign * (1.0 - 10.0**-n)), Velocity(sign * (1.0 - 10.0**-n)))
        for n in range(1, n_steps + 1)
    ]


def check_limits(n_steps: int = 12) -> CheckReport:
    """``u * u -> +-1`` monotonically as ``u -> +-1``.

    Past ``n = 7`` the doubles for ``beta`` saturate; strictness is judged on
    the exact value carried by the gap.  The final element must lie within
    ``10**-n_steps`` of light speed and the mirrored sequence must be the
    exact negation of the forward one.
    """
    if n_steps < 2:
        raise InvalidInput(f"n_steps must be >= 2, got {n_steps!r}")
    worst = _Worst()
    fwd = limit_sequence(n_steps, 1.0)
    back = limit_sequence(n_steps, -1.0)
    for i in range(1, n_steps):
        up = fwd[i].order_key() > fwd[i - 1].order_key()
        down = back[i].order_key() < back[i - 1].order_key()
        worst.add(0.0 if up and down else 1.0, fwd[i - 1], fwd[i])
    for f, b in zip(fwd, back):
        mirrored = b.beta == -f.beta and b.gap == f.gap
        worst.add(0.0 if mirrored else 1.0, f, b)
    bound = 10.0**-n_steps
    for r in (fwd[-1], back[-1]):
        worst.add(0.0 if r.gap < bound else 1.0, r)
    return worst.report("limits", 0.0)


def _decimal(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, float):
        return Decimal(x)
    return Decimal(str(x))


def oracle_compose(u_beta, v_beta, precision_digits: int = 50) -> Decimal:
    """``(u + v) / (1 + u v)`` in decimal arithmetic, rounded to ``precision_digits``.

    Floats are converted exactly.  The expression is evaluated with guard
    digits and rounded once at the end.
    """
    if precision_digits < 30:
        raise InvalidInput(f"precision_digits must be >= 30, got {precision_digits!r}")
    u, v = _decimal(u_beta), _decimal(v_beta)
    if not (abs(u) < 1 and abs(v) < 1):
        raise DomainError(f"operands must satisfy |beta| < 1, got {u}, {v}")
    with localcontext() as ctx:
        ctx.prec = precision_digits + 20
        r = (u + v) / (1 + u * v)
        ctx.prec = precision_digits
        return +r


@dataclass(frozen=True)
class RouteErrors:
    """Absolute errors of three double-precision routes against the oracle."""

    u: float
    v: float
    reference: Decimal
    naive: Decimal
    rapidity: Decimal
    gap_aware: Decimal


def route_errors(u: float, v: float, precision_digits: int = 50) -> RouteErrors:
    ref = oracle_compose(u, v, precision_digits)
    uu, vv = Velocity(u), Velocity(v)

    def err(beta: float) -> Decimal:
        return abs(Decimal(beta) - ref)

    return RouteErrors(
        u,
        v,
        ref,
        err(compose_naive(u, v)),
        err(compose_via_rapidity(uu, vv).beta),
        err(compose_sr(uu, vv).beta),
    )


def stability_grid(k_range: Sequence[int] = range(8, 16)) -> list[float]:
    return [s * (1.0 - 10.0**-k) for k in k_range for s in (1.0, -1.0)]


def check_stability(k_range: Sequence[int] = range(8, 16)) -> CheckReport:
    """The rapidity route is never less accurate than the literal formula.

    Runs over every ordered pair of the grid ``+-(1 - 10**-k)``; the violation
    is how far the rapidity error exceeds the naive one.
    """
    worst = _Worst()
    grid = stability_grid(k_range)
    for u in grid:
        for v in grid:
            e = route_errors(u, v)
            excess = max(Decimal(0), e.rapidity - e.naive)
            worst.add(float(excess), Velocity(u), Velocity(v))
    return worst.report("stability", 0.0)


def run_laws(
    laws: Sequence[str],
    spec: SampleSpec,
    p: IsoParams = IsoParams(),
    tol: float = DEFAULT_TOL,
    homomorphism_tol: float = DEFAULT_HOMOMORPHISM_TOL,
    limit_steps: int = 12,
) -> list[CheckReport]:
    """Run the named checks in the order given.  Unknown names raise."""
    table: dict[str, Callable[[], CheckReport]] = {
        "associativity": lambda: check_associativity(spec, tol),
        "commutativity": lambda: check_commutativity(spec),
        "identity": lambda: check_identity(spec),
        "inverse": lambda: check_inverse(spec),
        "homomorphism": lambda: check_homomorphism(p, spec, homomorphism_tol),
        "monotonicity": lambda: check_monotonicity(spec),
        "limits": lambda: check_limits(limit_steps),
        "stability": lambda: check_stability(),
    }
    unknown = [name for name in laws if name not in table]
    if unknown:
        raise InvalidInput(f"unknown law(s): {', '.join(unknown)}")
    return [table[name]() for name in laws]
