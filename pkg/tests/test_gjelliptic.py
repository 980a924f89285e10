import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import integrate, special

from gjtrig import gjelliptic as gj
from gjtrig.errors import DegeneracyError, DomainError


def ode_oracle(u, m1, m2):
    """Integrate s' = c d1 d2, c' = -s d1 d2, d1' = -m1 s c d2, d2' = -m2 s c d1 from u = 0."""

    def rhs(_, y):
        s, c, d1, d2 = y
        return [c * d1 * d2, -s * d1 * d2, -m1 * s * c * d2, -m2 * s * c * d1]

    sol = integrate.solve_ivp(rhs, (0.0, u), [0.0, 1.0, 1.0, 1.0], method="DOP853", rtol=1e-13, atol=1e-14)
    return sol.y[:, -1]


moduli = st.tuples(st.floats(0.05, 0.95), st.floats(0.0, 1.0)).map(lambda p: gj.GJModuli.of(p[0], p[0] * p[1]))


def test_moduli_validation():
    with pytest.raises(DomainError):
        gj.GJModuli.of(0.3, 0.5)
    with pytest.raises(DomainError):
        gj.GJModuli.of(1.0, 0.2)
    with pytest.raises(DomainError):
        gj.GJModuli.from_squares(0.2, 0.5)
    ext = gj.GJModuli.from_squares(1.4, -0.3)
    assert ext.kappa_sq == pytest.approx(1.7 / 1.3)
    assert math.isnan(ext.k2)


def test_origin():
    q = gj.gj_eval(0.0, gj.GJModuli.of(0.8, 0.3))
    assert q.as_tuple() == pytest.approx((0.0, 1.0, 1.0, 1.0), abs=1e-15)


@given(st.floats(-6.0, 6.0), st.floats(0.0, 0.95))
def test_k2_zero_is_jacobi(u, k1):
    q = gj.gj_eval(u, gj.GJModuli.of(k1, 0.0))
    sn, cn, dn, _ = special.ellipj(u, k1 * k1)
    assert q.as_tuple() == pytest.approx((sn, cn, dn, 1.0), abs=1e-12)


def test_equal_moduli():
    # k1 = k2 = k: s' = c (1 - k^2 s^2), so s = sin(x) / sqrt(1 - k^2 sin^2 x)... check via ODE
    m = gj.GJModuli.of(0.6, 0.6)
    for u in (0.3, 1.1, 2.5):
        assert gj.gj_eval(u, m).as_tuple() == pytest.approx(tuple(ode_oracle(u, 0.36, 0.36)), abs=1e-10)


def test_example_against_inversion():
    m = gj.GJModuli.of(0.8, 0.3)
    q = gj.gj_eval(0.9, m)
    assert gj.gj_invert_s(q.s, m) == pytest.approx(0.9, abs=1e-10)


@given(st.floats(0.0, 4.0), moduli)
def test_against_ode(u, m):
    assert gj.gj_eval(u, m).as_tuple() == pytest.approx(tuple(ode_oracle(u, m.m1, m.m2)), abs=1e-9)


@given(st.floats(-0.99, 0.99), moduli)
def test_invert_round_trip(x, m):
    u = gj.gj_invert_s(x, m)
    assert gj.gj_eval(u, m).s == pytest.approx(x, abs=1e-10)


def test_invert_domain():
    m = gj.GJModuli.of(0.8, 0.3)
    with pytest.raises(DomainError):
        gj.gj_invert_s(1.0, m)
    with pytest.raises(DomainError):
        gj.gj_invert_s(0.9, gj.GJModuli.from_squares(1.5, 0.1))


@given(st.floats(-5.0, 5.0), moduli)
def test_identities(u, m):
    assert max(gj.gj_eval(u, m).identity_residuals().values()) < 1e-11


def test_identities_extended_domain():
    m = gj.GJModuli.from_squares(1.3, -0.4)
    for u in np.linspace(-1.0, 1.0, 21):
        assert max(gj.gj_eval(float(u), m).identity_residuals().values()) < 1e-11
        assert max(gj.gj_derivative_residuals(float(u), m).values()) < 1e-6


@given(st.floats(-4.0, 4.0), moduli)
def test_derivatives(u, m):
    assert max(gj.gj_derivative_residuals(u, m).values()) < 1e-6


@given(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0), moduli, st.sampled_from([1, -1]))
def test_addition(u, v, m, sign):
    try:
        q = gj.gj_addition(u, v, sign, m)
    except DegeneracyError:
        assume(False)
    direct = gj.gj_eval(u + sign * v, m)
    assert q.as_tuple() == pytest.approx(direct.as_tuple(), abs=1e-9)


def test_addition_rejects_bad_sign():
    with pytest.raises(ValueError):
        gj.gj_addition(0.1, 0.2, 0, gj.GJModuli.of(0.5, 0.2))


def test_addition_with_zero():
    m = gj.GJModuli.of(0.8, 0.3)
    assert gj.gj_addition(0.9, 0.0, 1, m).as_tuple() == pytest.approx(gj.gj_eval(0.9, m).as_tuple(), abs=1e-15)


@given(st.floats(-5.0, 5.0), moduli)
def test_curve(u, m):
    assert max(gj.curve_residuals(u, m).values()) < 1e-10
