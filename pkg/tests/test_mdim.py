import json
import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gjtrig.errors import DimensionError, NonRealizableError
from gjtrig.simplex_trig import mdim, tetra
from gjtrig.simplex_trig.sampling import sample_simplex, sample_unit_vectors
from gjtrig.simplex_trig.spherical import SphericalTriangle


def inverse_gram_cos(gram, a, b):
    """Interior angle between the facets opposite a and b, from numpy's inverse."""
    g = np.linalg.inv(gram)
    return -g[a, b] / math.sqrt(g[a, a] * g[b, b])


def numpy_sine_constant(gram):
    m = gram.shape[0]
    gs = lambda idx: math.sqrt(max(np.linalg.det(gram[np.ix_(idx, idx)]), 0.0))
    den = np.prod([gs(list(f)) for f in combinations(range(m), m - 1)])
    return gs(list(range(m))) ** (m - 2) / den


def test_orthogonal_config():
    for m in range(3, 9):
        c = mdim.SimplexConfig(np.eye(m))
        assert mdim.mdim_sine_constant(c) == pytest.approx(1.0)
        assert abs(mdim.mdim_cosine_rule(c)) < 1e-15
        for j in range(2, m):
            assert mdim.facet_hierarchy_residual(c, j) == 0.0


def test_reduces_to_triangle(rng):
    for _ in range(50):
        n = sample_unit_vectors(3, rng)
        c, tri = mdim.SimplexConfig.from_vectors(n), SphericalTriangle.from_vectors(n)
        assert mdim.mdim_cosine_rule(c) == pytest.approx(math.cos(tri.alpha_j), abs=1e-11)
        assert mdim.mdim_sine_constant(c) == pytest.approx(tri.k, abs=1e-11)


def test_reduces_to_tetrahedron(rng):
    for _ in range(50):
        n = sample_unit_vectors(4, rng)
        c, tet = mdim.SimplexConfig.from_vectors(n), tetra.HypersphericalTetrahedron.from_vectors(n)
        assert mdim.mdim_cosine_rule(c) == pytest.approx(math.cos(tet.phi[1, 2]), abs=1e-10)
        assert mdim.mdim_sine_constant(c) == pytest.approx(tet.k_H, abs=1e-10)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_top_angle_against_inverse_gram(m, rng):
    # the top level alternates interior (odd m) and exterior (even m)
    sign = 1.0 if m % 2 else -1.0
    for _ in range(10):
        c = sample_simplex(m, rng)
        for order in ([*range(m)], [m - 1, *range(1, m - 1), 0], list(rng.permutation(m))):
            a, b = order[0], order[-1]
            assert mdim.mdim_cosine_rule(c, order) == pytest.approx(sign * inverse_gram_cos(c.gram, a, b), abs=1e-9)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_sine_constant_oracles(m, rng):
    for _ in range(10):
        n = sample_unit_vectors(m, rng)
        c = mdim.SimplexConfig.from_vectors(n)
        k = mdim.mdim_sine_constant(c)
        assert k == pytest.approx(numpy_sine_constant(c.gram), rel=1e-9)
        assert np.allclose(mdim.facet_normal_product_ratios(n), k, rtol=1e-8)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_polar_rule(m, rng):
    for _ in range(10):
        assert mdim.mdim_polar_cosine_residual(sample_simplex(m, rng)) < 1e-8


def test_window_gram_matches_vectors(rng):
    for m in (3, 4, 5):
        n = sample_unit_vectors(m, rng)
        c = mdim.SimplexConfig.from_vectors(n)
        assert np.allclose(mdim.window_gram(c), mdim.window_gram_from_vectors(n), atol=1e-9)


@pytest.mark.parametrize("m", [4, 5, 6])
def test_hierarchy(m, rng):
    for _ in range(5):
        c = sample_simplex(m, rng)
        for j in range(2, m):
            for k in range(1, j):
                assert mdim.facet_hierarchy_residual(c, j, k) < 1e-8


def test_json_round_trip(rng):
    c = sample_simplex(5, rng)
    back = mdim.SimplexConfig.from_json(json.loads(json.dumps(c.to_json())))
    assert np.array_equal(back.gram, c.gram)
    with pytest.raises(ValueError):
        mdim.SimplexConfig.from_json({"m": 4, "cos": [0.1, 0.2]})


def test_validation():
    with pytest.raises(DimensionError):
        mdim.SimplexConfig(np.eye(2))
    with pytest.raises(DimensionError):
        mdim.SimplexConfig(np.eye(9))
    g = np.eye(3)
    g[0, 1] = 0.5
    with pytest.raises(NonRealizableError):
        mdim.SimplexConfig(g)
    bad = np.full((3, 3), -0.9)
    np.fill_diagonal(bad, 1.0)
    with pytest.raises(NonRealizableError):
        mdim.SimplexConfig(bad)


@given(st.permutations(range(5)))
def test_perm_parity(p):
    expect = round(np.linalg.det(np.eye(5)[list(p)]))
    assert mdim._perm_parity(p) == expect
