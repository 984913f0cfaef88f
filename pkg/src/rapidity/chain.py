"""Repeated boosts: relativistic accumulation against Newtonian addition.

Under ``alpha`` an n-fold relativistic composition becomes an n-fold sum, so
``n`` identical boosts ``dv`` land exactly on ``beta(n * alpha(dv))``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

from rapidity.errors import EmptyInput, InvalidInput
from rapidity.maps import Rapidity, alpha, beta_inv
from rapidity.velocity import NewtonVelocity, Velocity

MAX_STEPS = 10**6

CSV_HEADER = ("step", "sr_beta", "newton_value", "rapidity")


@dataclass(frozen=True)
class ChainRow:
    step: int
    sr_beta: float
    newton_value: float
    rapidity: float


def _check_steps(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise InvalidInput(f"step count must be an integer, got {n!r}")
    n = int(n)
    if not 0 <= n <= MAX_STEPS:
        raise InvalidInput(f"step count must lie in [0, {MAX_STEPS}], got {n}")
    return n


def fold_compose(vs: Sequence[Velocity]) -> Velocity:
    """Compose a list of velocities by summing their rapidities once.

    Summation uses ``math.fsum``, so the result does not depend on the
    order of ``vs``.
    """
    if len(vs) == 0:
        raise EmptyInput("fold_compose needs at least one velocity")
    if len(vs) == 1:
        return vs[0]
    return beta_inv(Rapidity(math.fsum(alpha(v).value for v in vs)))


def boost_chain(dv: Velocity, n: int) -> Velocity:
    """The result of ``n`` successive boosts by ``dv``, in closed form."""
    n = _check_steps(n)
    return beta_inv(Rapidity(n * alpha(dv).value))


def newton_chain(dv: NewtonVelocity, n: int) -> NewtonVelocity:
    n = _check_steps(n)
    total = n * dv.value
    if not math.isfinite(total):
        raise OverflowError(f"{n} * {dv.value!r} is not a finite real")
    return NewtonVelocity(total)


def comparison_table(dv_beta: float, n_max: int) -> list[ChainRow]:
    """Rows ``0..n_max`` of SR, Newtonian and rapidity accumulation.

    ``newton_value`` is in units of c; ``rapidity`` is ``step * alpha(dv)``
    at ``k = 1``.
    """
    dv_beta = float(dv_beta)
    if not (math.isfinite(dv_beta) and 0.0 < dv_beta < 1.0):
        raise InvalidInput(f"dv_beta must lie in (0, 1), got {dv_beta!r}")
    n_max = _check_steps(n_max)
    dv = Velocity(dv_beta)
    a = alpha(dv).value
    rows = []
    for step in range(n_max + 1):
        rows.append(
            ChainRow(
                step=step,
                sr_beta=boost_chain(dv, step).beta,
                newton_value=newton_chain(NewtonVelocity(dv_beta), step).value,
                rapidity=step * a,
            )
        )
    return rows


def rows_to_csv(rows: Sequence[ChainRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.step, repr(r.sr_beta), repr(r.newton_value), repr(r.rapidity)])
    return buf.getvalue()


def rows_to_json(rows: Sequence[ChainRow]) -> str:
    return json.dumps([asdict(r) for r in rows])
