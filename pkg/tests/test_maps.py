import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rapidity.errors import ConvergenceError, InvalidInput
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
from rapidity.velocity import BELOW_ONE, IsoParams, Velocity, compose_sr

V = Velocity
K1, KHALF, K10 = IsoParams(k=1.0), IsoParams(k=0.5), IsoParams(k=10.0)

betas = st.floats(min_value=-(1 - 1e-6), max_value=1 - 1e-6)
ks = st.sampled_from([0.5, 1.0, 10.0])


def mp_alpha(beta, k):
    mpmath.mp.dps = 50
    return k * mpmath.log((1 + mpmath.mpf(beta)) / (1 - mpmath.mpf(beta)))


# -- alpha -------------------------------------------------------------------


def test_alpha_examples():
    assert alpha(V(0.0), KHALF).value == 0.0
    assert alpha(V(0.0), K10).value == 0.0
    # 0.5 ln 3 = 0.549306144334054845697...
    assert alpha(V(0.5), KHALF).value == pytest.approx(0.5493061443340548457, rel=1e-15)


@pytest.mark.parametrize("beta", [1e-20, 1e-8, 0.3, 0.5, 0.9, 0.999, 1 - 1e-12, BELOW_ONE])
@pytest.mark.parametrize("k", [0.5, 1.0, 10.0])
def test_alpha_against_mpmath(beta, k):
    expected = float(mp_alpha(beta, k))
    assert alpha(V(beta), IsoParams(k=k)).value == pytest.approx(expected, rel=4e-16)


@given(st.floats(min_value=-BELOW_ONE, max_value=BELOW_ONE), ks)
def test_alpha_is_odd_bit_for_bit(b, k):
    p = IsoParams(k=k)
    assert alpha(V(-b), p).value == -alpha(V(b), p).value


@given(st.lists(betas, min_size=2, max_size=30, unique=True))
def test_alpha_increasing(bs):
    xs = [alpha(V(b)).value for b in sorted(bs)]
    assert all(x1 <= x2 for x1, x2 in zip(xs, xs[1:]))


def test_alpha_strictly_increasing_on_grid():
    grid = [-1 + 2 * i / 1000 for i in range(1, 1000)]
    xs = [alpha(V(b)).value for b in grid]
    assert all(x1 < x2 for x1, x2 in zip(xs, xs[1:]))


# -- beta_inv ----------------------------------------------------------------


def test_beta_inv_examples():
    assert beta_inv(Rapidity(0.0), K10).beta == 0.0
    assert beta_inv(Rapidity(0.5 * math.log(3)), KHALF).beta == pytest.approx(0.5, abs=1e-15)


def test_beta_inv_does_not_overflow():
    u = beta_inv(Rapidity(1000.0), K1)
    assert u.beta == BELOW_ONE
    assert u.saturated
    assert 0.0 < u.gap < 1e-300
    assert beta_inv(Rapidity(-1e308), K1).beta == -BELOW_ONE


def test_literal_form_overflows_where_stable_form_does_not():
    with pytest.raises(OverflowError):
        math.exp(1000.0)
    assert math.isfinite(beta_inv(Rapidity(1000.0)).beta)


@given(st.floats(min_value=-1e6, max_value=1e6), ks)
def test_beta_inv_is_odd(x, k):
    p = IsoParams(k=k)
    a, b = beta_inv(Rapidity(x), p), beta_inv(Rapidity(-x), p)
    assert a.beta == -b.beta and a.gap == b.gap


@given(st.floats(min_value=-(1 - 1e-9), max_value=1 - 1e-9), ks)
def test_roundtrip_beta(b, k):
    p = IsoParams(k=k)
    assert abs(beta_inv(alpha(V(b), p), p).beta - b) <= 1e-12


@given(st.floats(min_value=-50.0, max_value=50.0), ks)
def test_roundtrip_rapidity(t, k):
    x = t * k
    p = IsoParams(k=k)
    assert abs(alpha(beta_inv(Rapidity(x), p), p).value - x) <= 1e-9 * (1 + abs(x))


# -- slope and derivative ----------------------------------------------------


def test_k_from_slope():
    # alpha'(0) = 2k/c for the closed form
    assert k_from_slope(2.0, 1.0) == 1.0
    assert k_from_slope(2.0, 3.0) == 3.0
    for s, c in [(-1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, -2.0)]:
        with pytest.raises(InvalidInput):
            k_from_slope(s, c)


@pytest.mark.parametrize("c,k", [(1.0, 1.0), (3.0, 0.5), (299792458.0, 7.0)])
def test_k_from_slope_inverts_alpha_prime_at_zero(c, k):
    p = IsoParams(c, k)
    assert k_from_slope(alpha_prime(V(0.0), p), c) == pytest.approx(k, rel=1e-15)


def test_alpha_prime_examples():
    assert alpha_prime(V(0.0), K1) == 2.0
    assert alpha_prime(V(0.5), K1) == pytest.approx(8 / 3, rel=1e-15)
    assert alpha_prime_beta(V(0.5), IsoParams(c=2.0, k=1.0)) == pytest.approx(8 / 3)
    assert alpha_prime(V(0.5), IsoParams(c=2.0, k=1.0)) == pytest.approx(4 / 3)


def test_alpha_prime_obeys_the_ode():
    # alpha'(v) (1 - v^2/c^2) = alpha'(0)
    p = IsoParams(c=3.0, k=0.7)
    a0 = alpha_prime(V(0.0), p)
    for b in (-0.99, -0.3, 0.2, 0.75, 0.999999):
        assert alpha_prime(V(b), p) * (1 - b * b) == pytest.approx(a0, rel=1e-9)


@pytest.mark.parametrize("b", [-0.95, -0.3, 0.0, 0.3, 0.6, 0.95])
@pytest.mark.parametrize("c,k", [(1.0, 1.0), (2.5, 0.5)])
def test_alpha_prime_matches_central_difference(b, c, k):
    p = IsoParams(c, k)
    h = 1e-6 * c  # physical step
    u = b * c
    fd = (
        alpha(V((u + h) / c), p).value - alpha(V((u - h) / c), p).value
    ) / (2 * h)
    assert fd == pytest.approx(alpha_prime(V(b), p), rel=1e-6)


@given(st.floats(min_value=-BELOW_ONE, max_value=BELOW_ONE))
def test_alpha_prime_positive(b):
    assert alpha_prime(V(b), K1) > 0


# -- quadrature oracle -------------------------------------------------------


@pytest.mark.parametrize("b", [0.0, 0.5, -0.5, 0.9, -0.9, 0.999, -0.999])
@pytest.mark.parametrize("k", [0.5, 1.0])
def test_quadrature_matches_closed_form(b, k):
    p = IsoParams(k=k)
    assert abs(alpha_via_quadrature(V(b), p, 1e-10).value - alpha(V(b), p).value) <= 1e-10


def test_quadrature_examples():
    assert alpha_via_quadrature(V(0.0), K1, 1e-10).value == 0.0
    assert alpha_via_quadrature(V(0.5), KHALF, 1e-10).value == pytest.approx(
        0.5493061443340548457, abs=1e-10
    )


@pytest.mark.parametrize("b", [1 - 1e-7, 1 - 1e-12, -(1 - 1e-15)])
def test_quadrature_substituted_branch(b):
    u = V(b)
    assert alpha_via_quadrature(u, K1, 1e-8).value == pytest.approx(
        float(mp_alpha(b, 1.0)), abs=1e-8
    )


def test_quadrature_physical_units():
    p = IsoParams(c=299792458.0, k=2.0)
    u = V(0.9)
    assert abs(alpha_via_quadrature(u, p, 1e-10).value - alpha(u, p).value) <= 1e-10


def test_quadrature_budget_exhaustion():
    with pytest.raises(ConvergenceError):
        alpha_via_quadrature(V(0.999), K1, tol=1e-300, max_evals=1000)


def test_quadrature_rejects_nonpositive_tol():
    with pytest.raises(InvalidInput):
        alpha_via_quadrature(V(0.5), K1, tol=0.0)


# -- composition through rapidity --------------------------------------------


def test_compose_via_rapidity_examples():
    assert compose_via_rapidity(V(0.5), V(0.5), K1).beta == pytest.approx(0.8, abs=1e-15)
    assert compose_via_rapidity(V(0.3), V(0.0), K1).beta == pytest.approx(0.3, abs=1e-15)
    u = V(1 - 1e-12)
    r = compose_via_rapidity(u, u, K1)
    assert r.beta < 1.0
    assert r.order_key() >= compose_via_rapidity(u, V(0.0), K1).order_key()


@given(betas, betas)
def test_compose_via_rapidity_matches_compose_sr(a, b):
    assert compose_via_rapidity(V(a), V(b)).beta == pytest.approx(
        compose_sr(V(a), V(b)).beta, abs=1e-14
    )


@given(betas, betas)
def test_composition_is_k_independent(a, b):
    rs = [compose_via_rapidity(V(a), V(b), IsoParams(k=k)).beta for k in (1e-3, 1.0, 1e3)]
    assert max(rs) - min(rs) <= 1e-12


@given(betas, betas, ks)
def test_homomorphism(a, b, k):
    p = IsoParams(k=k)
    au, av = alpha(V(a), p).value, alpha(V(b), p).value
    lhs = alpha(compose_sr(V(a), V(b)), p).value
    assert abs(lhs - au - av) <= 1e-9 * (1 + abs(au) + abs(av))
