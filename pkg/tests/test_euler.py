import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from gjtrig.dynamics import euler as eu
from gjtrig.dynamics import nambu as nb
from gjtrig.dynamics.integrate import integrate
from gjtrig.errors import ConstraintError, DomainError, SeparatrixError

I = eu.Inertia3(1.0, 2.0, 3.0)


def scipy_flow(rhs, y0, t1, times):
    sol = solve_ivp(lambda t, y: rhs(y), (0.0, t1), y0, method="DOP853", rtol=1e-12, atol=1e-13,
                    t_eval=times)
    return sol.y.T


def test_rhs_example():
    assert eu.euler3_rhs([0.0, 1.0, 1.0], I) == pytest.approx([-1 / 6, 0.0, 0.0])
    with pytest.raises(DomainError):
        eu.Inertia3(2.0, 1.0, 3.0)


def test_bracket_form(rng):
    H1, H2 = eu.euler3_hamiltonians(I)
    x = [nb.Poly.var(3, i) for i in range(3)]
    for _ in range(10):
        M = rng.normal(size=3)
        # M_i' = {M_i, H2, H1}: the Casimir goes before the energy
        br = [nb.nambu3_bracket(x[i], H2, H1, M) for i in range(3)]
        assert np.allclose(br, eu.euler3_rhs(M, I), atol=1e-14)
        wrong = [nb.nambu3_bracket(x[i], H1, H2, M) for i in range(3)]
        assert np.allclose(wrong, -eu.euler3_rhs(M, I), atol=1e-14)


def test_example_closed_form():
    M0 = [0.0, 1.0, 1.0]
    sol = eu.euler3_closed_form(I, M0)
    assert sol(0.0) == pytest.approx(M0, abs=1e-14)
    assert sol.m < 0
    times = np.linspace(0.0, 10.0, 41)
    ref = scipy_flow(lambda M: eu.euler3_rhs(M, I), M0, 10.0, times)
    got = np.array([sol(t) for t in times])
    assert np.max(np.abs(got - ref)) < 1e-8
    assert max(sol.ode_residual(t) for t in times) < 1e-12
    printed = eu.euler3_closed_form(I, M0, modulus="printed")
    assert printed.m == pytest.approx(sol.m, abs=1e-12)


def test_closed_form_phase_and_invariants(rng):
    for _ in range(20):
        M0 = rng.normal(size=3)
        try:
            sol = eu.euler3_closed_form(I, M0)
        except DomainError:
            continue
        assert sol(0.0) == pytest.approx(M0, abs=1e-11)
        assert sol(sol.t0)[0] == pytest.approx(0.0, abs=1e-11)
        for t in (1.3, 7.0):
            M = sol(t)
            assert eu.euler3_energy(M, I) == pytest.approx(eu.euler3_energy(M0, I), abs=1e-11)
            assert eu.euler3_casimir(M) == pytest.approx(eu.euler3_casimir(M0), abs=1e-11)


def test_closed_form_regimes():
    with pytest.raises(SeparatrixError):
        # |M|^2 = 2 H1 I2 exactly
        eu.euler3_closed_form(I, [1.0, 0.0, math.sqrt(3.0)])
    with pytest.raises(DomainError):
        eu.euler3_closed_form(I, [1.0, 0.1, 0.1])
    with pytest.raises(ValueError):
        eu.euler3_closed_form(I, [0.0, 1.0, 1.0], modulus="other")


def test_printed_amplitude_table_sign():
    A1sq, A2sq, A3sq = eu.tabulated_amplitudes(I, 1.0, 0.5)
    assert A1sq < 0 < A2sq and A3sq > 0


def test_closed_form_vs_own_integrator():
    M0 = [0.2, 1.0, 1.3]
    sol = eu.euler3_closed_form(I, M0)
    grid = np.linspace(0.0, 20.0, 81)
    tr = integrate(lambda t, M: eu.euler3_rhs(M, I), M0, (0.0, 20.0), t_eval=grid)
    assert np.max(np.abs(tr.states - np.array([sol(t) for t in grid]))) < 1e-6


def test_euler4_coefficient_example():
    c = eu.euler4_coefficients((1, 1, 1, 1), 1.0, 0.8, 0.3)
    assert c == pytest.approx([1.0, -1.0, -0.64, -0.09])
    with pytest.raises(ZeroDivisionError):
        eu.euler4_coefficients((1, 0, 1, 1), 1.0, 0.8, 0.3)


def test_euler4_scaling():
    # M -> lam M maps solutions to solutions when c -> c / lam^2
    A = np.array([1.3, 0.9, 0.7, 0.4])
    lam = 2.5
    c = eu.euler4_coefficients(A, 1.1, 0.7, 0.3)
    c_scaled = eu.euler4_coefficients(lam * A, 1.1, 0.7, 0.3)
    assert c_scaled == pytest.approx(c / lam ** 2)


def test_euler4_equal_alpha_beta_is_static():
    p = eu.Nambu4Params((1.0, 2.0, 3.0, 4.0), (1.0, 2.0, 3.0, 4.0))
    assert np.all(p.coefficients == 0.0)
    assert np.all(eu.euler4_rhs([0.3, 0.2, 0.1, 0.5], p) == 0.0)
    with pytest.raises(ValueError):
        eu.Nambu4Params((1.0, 2.0), (1.0, 2.0))


def test_euler4_bracket_form(rng):
    p = eu.Nambu4Params(tuple(rng.normal(size=4)), tuple(rng.normal(size=4)))
    H = p.hamiltonians()
    x = [nb.Poly.var(4, i) for i in range(4)]
    for _ in range(5):
        M = rng.normal(size=4)
        br = [nb.nambu4_bracket(x[i], *H, M) for i in range(4)]
        assert np.allclose(br, eu.euler4_rhs(M, p), atol=1e-12)


def test_euler4_closed_form_vs_scipy():
    A2, A3, A4, k1, k2 = 1.1, 0.6, 0.5, 0.7, 0.4
    A1 = eu.conserving_A1(A2, A3, A4, k1, k2)
    sol = eu.euler4_closed_form((A1, A2, A3, A4), 1.3, k1, k2, t0=0.2)
    c = sol.coefficients
    assert abs(c.sum()) < 1e-14
    times = np.linspace(0.0, 8.0, 33)
    ref = scipy_flow(lambda M: eu.euler4_rhs_coeffs(M, c), sol(0.0), 8.0, times)
    assert np.max(np.abs(np.array([sol(t) for t in times]) - ref)) < 1e-8
    assert max(sol.ode_residual(t) for t in times) < 1e-12


def test_fit_alpha_beta():
    sol = eu.euler4_closed_form((eu.conserving_A1(1.0, 0.5, 0.4, 0.6, 0.2), 1.0, 0.5, 0.4), 0.9, 0.6, 0.2)
    c = sol.coefficients
    p = eu.fit_alpha_beta(c, seed=3)
    assert np.allclose(p.coefficients, c, atol=1e-10)
    inv = p.invariants()
    M0, M1 = sol(0.0), sol(2.7)
    for f in inv.values():
        assert f(M1) == pytest.approx(f(M0), abs=1e-11)
    with pytest.raises(ConstraintError):
        eu.fit_alpha_beta([1.0, 1.0, 1.0, 1.0])
