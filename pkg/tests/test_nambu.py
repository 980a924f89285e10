import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gjtrig.dynamics import nambu as nb

point = st.lists(st.floats(-2.0, 2.0), min_size=4, max_size=4)


def coords(n):
    return [nb.Poly.var(n, i) for i in range(n)]


def test_coordinate_brackets():
    x3 = coords(3)
    assert nb.nambu3_bracket(*x3, [0.3, -1.0, 2.0]) == 1.0
    x4 = coords(4)
    assert nb.nambu4_bracket(*x4, [0.3, -1.0, 2.0, 0.5]) == 1.0
    assert nb.nambu4_bracket(x4[1], x4[0], x4[2], x4[3], [0.0] * 4) == -1.0


def test_repeated_argument_vanishes(rng):
    F, G = nb.Poly.random(3, 2, rng), nb.Poly.random(3, 2, rng)
    assert nb.nambu3_bracket(F, F, G, [0.2, 0.5, -0.4]) == pytest.approx(0.0, abs=1e-12)


def test_poly_ops():
    x, y = coords(2)
    p = (x + 1.0) * (x - 1.0) - y * y
    assert p([3.0, 2.0]) == 4.0
    assert p.diff(0)([3.0, 2.0]) == 6.0
    assert (-p)([3.0, 2.0]) == -4.0
    assert list(p.grad([1.0, 1.0])) == [2.0, -2.0]


@given(point)
def test_bracket_vs_numpy_jacobian(x):
    rng = np.random.default_rng(5)
    polys = [nb.Poly.random(4, 2, rng) for _ in range(4)]
    jac = np.array([p.grad(x) for p in polys])
    assert nb.nambu4_bracket(*polys, x) == pytest.approx(np.linalg.det(jac), abs=1e-9)
    assert nb.poly_bracket(*polys)(x) == pytest.approx(np.linalg.det(jac), abs=1e-9)


def test_skew_and_leibniz(rng):
    for n in (3, 4):
        x = rng.normal(size=n)
        f = [nb.Poly.random(n, 2, rng) for _ in range(n)]
        assert nb.skew_residual(f, x) < 1e-10
        extra = nb.Poly.random(n, 2, rng)
        r, scale = nb.leibniz_residual(f[0], extra, f[1:], x)
        assert r / scale < 1e-12


@pytest.mark.parametrize("n", [3, 4])
def test_fundamental_identity(n, rng):
    x = rng.normal(size=n)
    f = [nb.Poly.random(n, 2, rng) for _ in range(n - 1)]
    g = [nb.Poly.random(n, 2, rng) for _ in range(n)]
    r, scale = nb.fundamental_identity_residual(f, g, x)
    assert r / scale < 1e-10
    with pytest.raises(ValueError):
        nb.fundamental_identity_residual(g, g, x)


def test_wrong_dimension():
    with pytest.raises(ValueError):
        nb.nambu3_bracket(*coords(3), [0.0, 1.0])
