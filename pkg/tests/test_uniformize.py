import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import special

from gjtrig import uniformize as uz
from gjtrig.elliptic import complete_K
from gjtrig.errors import (
    ConstraintError,
    DegeneracyError,
    DomainError,
    InadmissibleModulusError,
    NotSymmetricError,
)
from gjtrig.simplex_trig.sampling import sample_tetrahedron, sample_triangle
from gjtrig.simplex_trig.spherical import SphericalTriangle
from gjtrig.simplex_trig.tetra import HypersphericalTetrahedron, equifacial_tetrahedron


def test_equilateral_b_triangle():
    mu = 0.6
    K = complete_K(mu)
    u = uz.triangle_from_b(2 * K / 3, 2 * K / 3, mu)
    _, _, dn, ph = special.ellipj(2 * K / 3, mu * mu)
    assert np.allclose(u.alphas, ph, atol=1e-13)
    assert np.allclose(u.triangle.thetas, math.acos(dn), atol=1e-13)
    assert max(u.residuals().values()) < 1e-12
    assert u.triangle.k == pytest.approx(1 / mu, rel=1e-12)


def test_quarter_period_gives_right_angle():
    mu = 0.7
    K = complete_K(mu)
    u = uz.triangle_from_b(K, 0.4 * K, mu)
    assert u.alphas[0] == pytest.approx(math.pi / 2, abs=1e-14)
    assert u.triangle.alpha_i == pytest.approx(math.pi / 2, abs=1e-10)


@given(st.floats(0.05, 0.95), st.floats(0.05, 0.9), st.floats(0.05, 0.9))
def test_b_triangles_against_scipy(mu, x, y):
    K = complete_K(mu)
    bi, bj = 2 * K * x, 2 * K * y * (1 - x)
    assume(bi > 1e-3 and bj > 1e-3 and 2 * K - bi - bj > 1e-3)
    try:
        u = uz.triangle_from_b(bi, bj, mu)
    except DegeneracyError:
        assume(False)
    for b, a in zip(u.b, u.alphas):
        assert a == pytest.approx(special.ellipj(b, mu * mu)[3], abs=1e-12)
    r = u.residuals()
    assert max(r.values()) < 1e-9
    br = u.real_branch_residuals()
    assert br["cn"] < 1e-10 and br["dn"] < 1e-10


def test_b_triangle_rejections():
    with pytest.raises(InadmissibleModulusError):
        uz.triangle_from_b(0.5, 0.5, 1.0)
    K = complete_K(0.5)
    with pytest.raises(ConstraintError):
        uz.triangle_from_b(K, K, 0.5)


def test_a_parameterization(rng):
    checked = 0
    while checked < 100:
        tri = sample_triangle(rng)
        if tri.k < 1.05 or max(tri.thetas) >= math.pi / 2:
            continue
        r = uz.verify_a_parameterization(tri)
        for key in ("sn", "cn", "dn", "sum", "cn_add", "dn_add"):
            assert r[key] < 1e-8, key
        checked += 1


def test_a_parameterization_domain():
    with pytest.raises(InadmissibleModulusError):
        uz.verify_a_parameterization(SphericalTriangle(math.pi / 2, math.pi / 2, math.pi / 2))
    # k > 1 but an obtuse side would need dn < 0
    tri = SphericalTriangle(2.0, 1.9, 0.4)
    assert tri.k > 1.0
    with pytest.raises(DomainError):
        uz.verify_a_parameterization(tri)


def test_W_derivative(rng):
    for _ in range(50):
        assert uz.spherical_W_derivative_residual(sample_triangle(rng)) < 1e-7


def test_differential_zero_step():
    assert uz.spherical_differential_residual(SphericalTriangle(1.0, 1.1, 1.2), 0.0) == 0.0


def test_differential_is_second_order():
    tri = SphericalTriangle(1.0, 1.3, 0.9)
    r1 = uz.spherical_differential_residual(tri, 1e-2)
    r2 = uz.spherical_differential_residual(tri, 5e-3)
    assert r1 < 1e-3
    assert 3.0 < r1 / r2 < 5.0


def test_level_set_step_stays_on_level():
    f = lambda x: x[0] ** 2 + x[1] ** 2
    x = uz.level_set_step(f, [1.0, 0.0], [0.0, 1.0], 0.1)
    assert f(x) == pytest.approx(1.0, abs=1e-13)
    assert np.linalg.norm(x - [1.0, 0.0]) == pytest.approx(0.1, abs=1e-2)


def test_right_tetrahedron_dictionary():
    tet = HypersphericalTetrahedron.from_six([math.pi / 2] * 6)
    rep = uz.symmetric_tet_residuals(tet)
    assert rep.redsin == 0.0
    assert np.allclose(uz.face_constants(tet), 1.0)
    assert np.allclose(uz.vertex_constants(tet), 1.0)


def test_symmetric_tetrahedron():
    tet = equifacial_tetrahedron(1.0, 1.2, 1.4)
    rep = uz.symmetric_tet_residuals(tet)
    assert rep.redsin < 1e-12
    steps = sorted(rep.differential)
    assert rep.differential[steps[-1]] < 1e-4
    assert all(2.0 < r < 6.0 for r in rep.order_ratios)


def test_symmetric_rejects_generic(rng):
    tet = sample_tetrahedron(rng)
    with pytest.raises(NotSymmetricError):
        uz.symmetric_tet_residuals(tet)


def test_hyp_W_derivative(rng):
    for _ in range(20):
        tet = sample_tetrahedron(rng)
        if tet.gsin6 < 1e-2:
            continue
        for e in [(0, 1), (1, 3)]:
            scale = max(1.0, abs(uz.hyp_W_derivative(tet, e)))
            assert uz.hyp_W_derivative_residual(tet, e) / scale < 1e-6


def test_gj_identification_equifacial():
    rep = uz.gj_identification_report(equifacial_tetrahedron(1.0, 1.2, 1.4))
    assert rep.face_spread < 1e-12 and rep.vertex_spread < 1e-12
    assert rep.sine_residual < 1e-8
    assert rep.cosine_residual is None or rep.cosine_residual < 1e-8
    assert len(rep.a) == 6


def test_gj_identification_generic(rng):
    rep = uz.gj_identification_report(sample_tetrahedron(rng))
    assert rep.a is None
    assert rep.notes


def test_gj_angles_from_u():
    (th, al, ph), res = uz.gj_angles_from_u(0.0, 0.8, 0.5)
    assert (th, al, ph) == (0.0, 0.0, 0.0)
    (th, al, ph), res = uz.gj_angles_from_u(0.9, 0.8, 0.0)
    assert ph == 0.0
    sn, _, _, _ = special.ellipj(0.9, 0.64)
    assert math.sin(th) == pytest.approx(sn, abs=1e-13)
    assert math.sin(al) == pytest.approx(0.8 * sn, abs=1e-13)
    assert max(res.values()) < 1e-12
    with pytest.raises(InadmissibleModulusError):
        uz.gj_angles_from_u(0.1, 1.0, 0.2)
