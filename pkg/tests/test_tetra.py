import math

import numpy as np
import pytest

from gjtrig.errors import IndeterminateRatioError, NotCollapsedError
from gjtrig.multivec import cross_nd
from gjtrig.simplex_trig import tetra
from gjtrig.simplex_trig.sampling import sample_tetrahedron, sample_unit_vectors

H = math.pi / 2
RIGHT = [H] * 6
REG = [math.pi / 3] * 6
LABELS = [(0, 1, 2, 3), (2, 0, 3, 1), (3, 1, 0, 2), (1, 3, 2, 0)]


def numpy_face_normal(n, a, b, c):
    """Unit normal of span(n_a, n_b, n_c) in R^4 via an SVD null vector."""
    _, _, vt = np.linalg.svd(n[[a, b, c]])
    return vt[-1]


def sampled(rng, count=100):
    out = []
    while len(out) < count:
        tet = sample_tetrahedron(rng)
        if tet.gsin6 > 1e-3:
            out.append(tet)
    return out


def test_gsin6_examples(rng):
    assert tetra.gsin6(RIGHT) == pytest.approx(1.0)
    n = rng.normal(size=(4, 3)) @ np.linalg.qr(rng.normal(size=(4, 4)))[0][:, :3].T
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    th = np.arccos(np.clip(n @ n.T, -1, 1))
    assert tetra.gsin6(th) < 1e-7
    for _ in range(50):
        n = sample_unit_vectors(4, rng)
        tet = tetra.HypersphericalTetrahedron.from_vectors(n)
        assert tet.gsin6 == pytest.approx(abs(np.linalg.det(n)), abs=1e-10)
        assert tet.gsin6 == pytest.approx(abs(n[0] @ cross_nd(n[1:])), abs=1e-10)


def test_dihedral_examples():
    assert tetra.hyp_cosine_rule(RIGHT) == pytest.approx(H)
    phis = [tetra.hyp_cosine_rule(REG, lab) for lab in LABELS]
    assert np.ptp(phis) < 1e-12
    # four vertices of a regular 4-simplex: outward normals meet at cos = -1/4
    assert math.cos(phis[0]) == pytest.approx(-0.25, abs=1e-14)


def test_dihedral_against_svd_normals(rng):
    for tet in sampled(rng, 50):
        n = tet.vectors
        for a, b in tetra.EDGES:
            c, d = [x for x in range(4) if x not in (a, b)]
            u, v = numpy_face_normal(n, a, b, c), numpy_face_normal(n, a, b, d)
            # phi is the angle between the outward normals of the two faces
            u *= -np.sign(u @ n[d])
            v *= -np.sign(v @ n[c])
            assert math.cos(tet.phi[a, b]) == pytest.approx(u @ v, abs=1e-9)


def test_sine_constant_and_ratios(rng):
    assert tetra.hyp_sine_constant(RIGHT) == pytest.approx(1.0)
    for tet in sampled(rng):
        r = tetra.sine_rule_ratios(tet.theta)
        assert np.allclose(r, tet.k_H, atol=1e-9)
        assert np.ptp(tetra.product_sine_ratios(tet.theta)) < 1e-9
        for a, b in tetra.EDGES:
            assert tetra.hyp_sin_phi(tet.theta, (a, b)) == pytest.approx(math.sin(tet.phi[a, b]), abs=1e-9)
        for e1, e2 in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]:
            prod = (math.sin(tet.phi[e1]) / math.sin(tet.theta[e1])) * (math.sin(tet.phi[e2]) / math.sin(tet.theta[e2]))
            assert prod == pytest.approx(tet.k_H, abs=1e-9)


def test_near_flat_sine_constant_small(rng):
    n = sample_unit_vectors(4, rng)
    n[3] = n[0] + n[1] - n[2] + 1e-5 * rng.normal(size=4)
    tet = tetra.HypersphericalTetrahedron.from_vectors(n)
    assert tet.k_H < 1e-3


def test_desnanot_jacobi_on_gram(rng):
    for tet in sampled(rng, 30):
        assert tetra.gram_desnanot_residual(tet.theta) < 1e-10


def test_polar_rule(rng):
    phi_right = np.full((4, 4), H)
    assert math.isclose(tetra.hyp_polar_cosine_rule(phi_right), 0.0, abs_tol=1e-15)
    reg = tetra.HypersphericalTetrahedron.from_six(REG)
    assert tetra.hyp_polar_cosine_rule(reg.phi) == pytest.approx(0.5, abs=1e-12)
    for tet in sampled(rng):
        for lab in LABELS:
            cleared, den = tetra.hyp_polar_cleared_residual(tet, lab)
            assert cleared < 1e-9
            if den > 1e-3:
                k, l = lab[2], lab[3]
                assert tetra.hyp_polar_cosine_rule(tet.phi, lab) == pytest.approx(math.cos(tet.theta[k, l]), abs=1e-8)


def test_cosine_ratios(rng):
    for tet in sampled(rng, 50):
        try:
            r = tetra.cosine_ratios(tet.theta, min_den=1e-6)
        except IndeterminateRatioError:
            continue
        assert np.allclose(r, tet.k_H, atol=1e-8)
    with pytest.raises(IndeterminateRatioError):
        tetra.cosine_ratio_constant(RIGHT)
    sym = tetra.equifacial_tetrahedron(1.0, 1.2, 1.4)
    assert tetra.cosine_ratio_constant(sym.theta) == pytest.approx(sym.k_H, abs=1e-8)


def test_vertex_rules(rng):
    assert math.isclose(tetra.vertex_cosine_rule(H, H, H), 0.0, abs_tol=1e-15)
    for tet in sampled(rng, 50):
        for i, j, k, l in LABELS:
            c = tetra.vertex_cosine_rule(tet.alpha(j, i, k), tet.alpha(j, k, l), tet.alpha(j, i, l))
            assert c == pytest.approx(math.cos(tet.phi[j, k]), abs=1e-9)
            back = tetra.vertex_polar_cosine(tet.phi[j, k], tet.phi[i, j], tet.phi[j, l])
            assert back == pytest.approx(math.cos(tet.alpha(j, i, l)), abs=1e-9)
        assert np.ptp(tetra.vertex_sine_ratios(tet.theta, 1)) < 1e-9


def test_mixed_face_vertex_rule(rng):
    assert tetra.prop11_residual(RIGHT) < 1e-15
    assert tetra.prop11_residual(REG) < 1e-10
    for tet in sampled(rng, 50):
        for lab in LABELS:
            assert tetra.prop11_residual(tet.theta, lab) < 1e-9


def test_parts_rules(rng):
    right = tetra.HypersphericalTetrahedron.from_six(RIGHT)
    reg = tetra.HypersphericalTetrahedron.from_six(REG)
    assert tetra.hyp_four_parts_residual(right) < 1e-12
    assert tetra.hyp_five_parts_residual(right) < 1e-12
    assert tetra.hyp_four_parts_residual(reg) < 1e-9
    assert tetra.hyp_five_parts_residual(reg) < 1e-9
    for tet in sampled(rng, 50):
        for lab in LABELS:
            assert tetra.hyp_four_parts_residual(tet, lab) < 1e-8
            assert tetra.hyp_five_parts_residual(tet, lab) < 1e-8


def test_flat_tetrahedron_triple_sines(rng):
    checked = 0
    for _ in range(50):
        q = np.linalg.qr(rng.normal(size=(4, 4)))[0]
        n = rng.normal(size=(4, 3)) @ q[:, :3].T
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        th = np.arccos(np.clip(n @ n.T, -1, 1))
        np.fill_diagonal(th, 0.0)
        if tetra.gsin6(th) >= 1e-8:
            continue
        col = tetra.collapse_tetrahedron(th, gsin_tol=1e-8)
        assert max(col.vertex_triple_sines) < 1e-8
        assert all(col.vanishing)
        checked += 1
    assert checked > 20
    with pytest.raises(NotCollapsedError):
        tetra.collapse_tetrahedron(RIGHT)


def test_equifacial_symmetry():
    tet = tetra.equifacial_tetrahedron(1.0, 1.2, 1.4)
    assert tetra.opposite_dihedral_gap(tet) < 1e-12
