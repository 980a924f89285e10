"""Trigonometry of an (m-1)-simplex on S^{m-1} from its m x m cosine Gram.

Angles at every level of the facet hierarchy are addressed by a vertex
subset and an ordering ``(a, *ridge, b)``:

* level 1 (``ridge`` empty) is the central angle between a and b;
* level j >= 2 lives in the j-face S = {a, b} + ridge and is the angle
  between the facets S - {b} and S - {a} along the ridge, defined through
  u_(a,ridge) . u_(ridge,b) = -cos.

Level 2 is a face angle of a triangle (at its single ridge vertex) and
level 3 the dihedral angle of a tetrahedron in the exterior convention.
In general the angle is interior for even levels and exterior for odd
levels from 3 up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from ..errors import DegeneracyError, DimensionError, NonRealizableError
from ..multivec import MAX_DIM, cross_nd, det
from .spherical import CLAMP_TOL, gram_det_sqrt


def _perm_parity(seq) -> int:
    """+1 for an even permutation of sorted(seq), -1 for odd."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class SimplexConfig:
    """Cosine Gram of m unit vectors in R^m (vertex labels 0..m-1)."""

    gram: np.ndarray

    def __post_init__(self):
        g = np.array(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DimensionError("Gram matrix must be square")
        m = g.shape[0]
        if not 3 <= m <= MAX_DIM:
            raise DimensionError(f"m = {m} outside 3..{MAX_DIM}")
        if not np.allclose(g, g.T, atol=1e-12, rtol=0):
            raise NonRealizableError("Gram matrix is not symmetric")
        if not np.allclose(np.diag(g), 1.0, atol=1e-12, rtol=0):
            raise NonRealizableError("Gram diagonal must be 1")
        off = g[~np.eye(m, dtype=bool)]
        if np.any(np.abs(off) >= 1.0):
            raise NonRealizableError("off-diagonal cosines must lie in (-1, 1)")
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)
        if det(g) < -1e-12:
            raise NonRealizableError("Gram determinant is negative")

    @property
    def m(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def from_vectors(cls, n) -> "SimplexConfig":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n, axis=1, keepdims=True)
        g = np.clip(n @ n.T, -1.0, 1.0)
        np.fill_diagonal(g, 1.0)
        return cls(g)

    @classmethod
    def from_json(cls, rec: dict) -> "SimplexConfig":
        m = int(rec["m"])
        vals = list(rec["cos"])
        if len(vals) != m * (m - 1) // 2:
            raise ValueError("cos list length does not match m")
        g = np.eye(m)
        it = iter(vals)
        for i in range(m):
            for j in range(i + 1, m):
                g[i, j] = g[j, i] = float(next(it))
        return cls(g)

    def to_json(self) -> dict:
        m = self.m
        return {"m": m, "cos": [float(self.gram[i, j]) for i in range(m) for j in range(i + 1, m)]}

    def gsin(self, idx) -> float:
        """Generalized sine of the vertex subset ``idx`` (sqrt of its Gram det)."""
        idx = list(idx)
        if len(idx) == 1:
            return 1.0
        return gram_det_sqrt(det(self.gram[np.ix_(idx, idx)]))

    @cached_property
    def gsin_full(self) -> float:
        return self.gsin(range(self.m))

    def facets(self) -> list[tuple[int, ...]]:
        """Cyclic windows W_r = (r, r+1, ..., r+m-2) mod m, r = 0..m-1."""
        m = self.m
        return [tuple((r + s) % m for s in range(m - 1)) for r in range(m)]

    def angle_cos(self, a: int, ridge, b: int) -> float:
        return angle_cos(self.gram, a, ridge, b)

    def angle(self, a: int, ridge, b: int) -> float:
        c = self.angle_cos(a, ridge, b)
        if abs(c) > 1.0 + CLAMP_TOL:
            raise DegeneracyError(f"angle cosine {c!r} out of range")
        return float(np.arccos(min(1.0, max(-1.0, c))))


def angle_cos(gram, a: int, ridge, b: int) -> float:
    """Cosine of the hierarchy angle (a, ridge, b); level len(ridge)+1."""
    g = np.asarray(gram, dtype=float)
    ridge = list(ridge)
    if not ridge:
        return float(g[a, b])
    rows, cols = [a] + ridge, ridge + [b]
    den = gram_det_sqrt(det(g[np.ix_(rows, rows)])) * gram_det_sqrt(det(g[np.ix_(cols, cols)]))
    if den == 0.0:
        raise DegeneracyError("a facet through the ridge is degenerate")
    return -det(g[np.ix_(rows, cols)]) / den


def angle_sin(gram, a: int, ridge, b: int) -> float:
    c = angle_cos(gram, a, ridge, b)
    return float(np.sqrt(max(0.0, 1.0 - c * c)))


def mdim_cosine_rule(config: SimplexConfig, order=None) -> float:
    """Top-level angle for the ordering i_1..i_m: -det(mixed cosines)/(gsin gsin)."""
    order = list(range(config.m)) if order is None else list(order)
    if sorted(order) != list(range(config.m)):
        raise ValueError("order must be a permutation of the vertex labels")
    return angle_cos(config.gram, order[0], order[1:-1], order[-1])


def mdim_sine_constant(config: SimplexConfig) -> float:
    """gsin(all)^(m-2) over the product of the m facet generalized sines."""
    m = config.m
    den = 1.0
    for f in combinations(range(m), m - 1):
        den *= config.gsin(f)
    if den == 0.0:
        raise DegeneracyError("a facet is degenerate")
    return config.gsin_full ** (m - 2) / den


def facet_normal_product_ratios(vectors) -> np.ndarray:
    """Cross-product oracle for the sine constant, one value per vertex v.

    |x of the unit normals of the m-1 facets containing v| / gsin(facet without v).
    """
    n = np.asarray(vectors, dtype=float)
    n = n / np.linalg.norm(n, axis=1, keepdims=True)
    m = n.shape[0]
    out = []
    for v in range(m):
        normals = []
        for f in combinations(range(m), m - 1):
            if v in f:
                u = cross_nd(n[list(f)])
                normals.append(u / np.linalg.norm(u))
        rest = [x for x in range(m) if x != v]
        out.append(np.linalg.norm(cross_nd(normals)) / np.linalg.norm(cross_nd(n[rest])))
    return np.array(out)


def window_gram(config: SimplexConfig) -> np.ndarray:
    """Signed inner products U_r . U_s of the cyclic facet normals, from angles only.

    For windows sharing the ridge R with a = W_r - W_s and b = W_s - W_r,
    U_r . U_s = -e_r e_s cos theta(a, R, b), where e_r, e_s are the parities
    reordering W_r to (a, R) and W_s to (R, b).
    """
    w = config.facets()
    m = config.m
    x = np.eye(m)
    for r in range(m):
        for s in range(r + 1, m):
            (a,) = set(w[r]) - set(w[s])
            (b,) = set(w[s]) - set(w[r])
            ridge = [v for v in w[r] if v != a]
            e_r = _perm_parity(w[r]) * _perm_parity([a] + ridge)
            e_s = _perm_parity(w[s]) * _perm_parity(ridge + [b])
            x[r, s] = x[s, r] = -e_r * e_s * angle_cos(config.gram, a, ridge, b)
    return x


def window_gram_from_vectors(vectors) -> np.ndarray:
    n = np.asarray(vectors, dtype=float)
    n = n / np.linalg.norm(n, axis=1, keepdims=True)
    m = n.shape[0]
    us = []
    for r in range(m):
        u = cross_nd(n[[(r + s) % m for s in range(m - 1)]])
        us.append(u / np.linalg.norm(u))
    u = np.array(us)
    return u @ u.T


def polar_X(config: SimplexConfig) -> np.ndarray:
    """(m-1)x(m-1) matrix X_rc = U_r . U_(c+1)."""
    wg = window_gram(config)
    m = config.m
    return wg[np.ix_(range(m - 1), range(1, m))]


def mdim_polar_cosine(config: SimplexConfig) -> float:
    """cos theta_{i_(m-1) i_m} from facet angles alone.

    det(X) is the inner product of the two normal products, so it is
    divided by their lengths (square roots of the corresponding Gram minors).
    """
    wg = window_gram(config)
    m = config.m
    pa = det(wg[: m - 1, : m - 1])
    pb = det(wg[1:, 1:])
    if pa <= 0.0 or pb <= 0.0:
        raise DegeneracyError("facet normals are linearly dependent")
    return det(polar_X(config)) / np.sqrt(pa * pb)


def mdim_polar_cosine_residual(config: SimplexConfig) -> float:
    m = config.m
    return float(abs(config.gram[m - 2, m - 1] - mdim_polar_cosine(config)))


def hierarchy_k(gram, subset, ridge) -> float:
    """k_(j-1) for the j-face ``subset`` around the (j-3)-ridge ``ridge``.

    The three level-(j-1) angles are those of the facets subset - {y},
    y in subset - ridge, each along ``ridge``. They are the sides of the
    link triangle only as interior angles, and the hierarchy convention is
    interior at even levels and exterior at odd ones >= 3, so those cosines
    are negated before entering the generalized sine.
    """
    subset, ridge = list(subset), list(ridge)
    free = [v for v in subset if v not in ridge]
    if len(free) != 3:
        raise ValueError("ridge must leave exactly three free vertices")
    level = len(ridge) + 1
    flip = -1.0 if level >= 3 and level % 2 else 1.0
    cs, ss = [], []
    for y in free:
        a, b = [v for v in free if v != y]
        c = flip * angle_cos(gram, a, ridge, b)
        cs.append(c)
        ss.append(np.sqrt(max(0.0, 1.0 - c * c)))
    d = 1.0 - cs[0] ** 2 - cs[1] ** 2 - cs[2] ** 2 + 2.0 * cs[0] * cs[1] * cs[2]
    den = ss[0] * ss[1] * ss[2]
    if den == 0.0:
        raise DegeneracyError("hierarchy sine constant undefined")
    return gram_det_sqrt(d) / den


def hierarchy_step(gram, subset, ridge, x) -> tuple[float, float]:
    """Both sides of sin theta^[j](S; R' + x) = k_(j-1)(S, R') sin theta^[j-1](S - x; R').

    ``ridge`` is R' (j-3 vertices) and ``x`` one of the three free vertices.
    """
    subset, ridge = list(subset), list(ridge)
    free = [v for v in subset if v not in ridge]
    a, b = [v for v in free if v != x]
    lhs = angle_sin(gram, a, ridge + [x], b)
    rhs = hierarchy_k(gram, subset, ridge) * angle_sin(gram, a, ridge, b)
    return lhs, rhs


def facet_hierarchy_residual(config: SimplexConfig, j: int, k: int | None = None) -> float:
    """Max residual of the sine hierarchy from level j down to level k.

    Every j-face S and every level-j angle in it is visited. The angle is
    peeled one ridge vertex at a time, multiplying the constants, until it
    reaches level k; the chained product is compared with the level-j sine.
    ``k = None`` means a single step (k = j - 1).
    """
    m = config.m
    k = j - 1 if k is None else k
    if not 1 <= k < j <= m - 1:
        raise ValueError(f"need 1 <= k < j <= m-1, got j={j}, k={k}, m={m}")
    g = config.gram
    worst = 0.0
    for subset in combinations(range(m), j + 1):
        for a, b in combinations(subset, 2):
            rest = [v for v in subset if v not in (a, b)]
            lhs = angle_sin(g, a, rest, b)
            rhs, cur, ridge = 1.0, list(subset), list(rest)
            while len(ridge) + 1 > k:
                x = ridge[-1]
                ridge = ridge[:-1]
                rhs *= hierarchy_k(g, cur, ridge)
                cur = [v for v in cur if v != x]
            rhs *= angle_sin(g, a, ridge, b)
            worst = max(worst, abs(lhs - rhs))
    return worst
