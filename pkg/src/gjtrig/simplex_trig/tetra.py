"""Hyperspherical tetrahedra on S^3.

Angles are stored in symmetric 4x4 arrays indexed by vertex labels 0..3.
``phi[a, b]`` is the dihedral angle along edge ab in the convention
u_{cab} . u_{abd} = -cos phi_ab, i.e. the supplement of the interior
dihedral angle (so the regular tetrahedron with cos theta = c has
cos phi = -c / (1 + 2c)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

import numpy as np

from ..errors import DegeneracyError, IndeterminateRatioError, NonRealizableError, NotCollapsedError
from ..multivec import cross_nd, desnanot_jacobi_residual, det
from .spherical import CLAMP_TOL, gram_det_sqrt, gsin_cos

EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
FACES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def theta_matrix(six) -> np.ndarray:
    """(t_ij, t_ik, t_il, t_jk, t_jl, t_kl) -> symmetric 4x4 with zero diagonal."""
    six = np.asarray(six, dtype=float)
    if six.shape != (6,):
        raise ValueError("expected six central angles")
    t = np.zeros((4, 4))
    for (a, b), v in zip(EDGES, six):
        t[a, b] = t[b, a] = v
    return t


def _theta(theta) -> np.ndarray:
    t = np.asarray(theta, dtype=float)
    if t.shape == (6,):
        t = theta_matrix(t)
    if t.shape != (4, 4):
        raise ValueError("expected six angles or a 4x4 angle matrix")
    off = t[~np.eye(4, dtype=bool)]
    if np.any(off <= 0.0) or np.any(off >= np.pi):
        raise NonRealizableError("central angles must lie in (0, pi)")
    return t


def _cos(theta) -> np.ndarray:
    c = np.cos(_theta(theta))
    np.fill_diagonal(c, 1.0)
    return c


def gsin6(theta) -> float:
    """Generalized sine of six central angles: sqrt det of the 4x4 cosine Gram."""
    return gram_det_sqrt(det(_cos(theta)))


def face_gsin(theta, a: int, b: int, c: int) -> float:
    g = _cos(theta)
    return gsin_cos(g[a, b], g[a, c], g[b, c])


def _face_gsin_c(g, a, b, c):
    return gsin_cos(g[a, b], g[a, c], g[b, c])


def hyp_cosine_rule(theta, labels=(0, 1, 2, 3)) -> float:
    """Dihedral phi_jk between faces ijk and jkl."""
    i, j, k, l = labels
    g = _cos(theta)
    m = np.array([
        [g[i, j], g[i, k], g[i, l]],
        [1.0, g[j, k], g[j, l]],
        [g[j, k], 1.0, g[k, l]],
    ])
    den = _face_gsin_c(g, i, j, k) * _face_gsin_c(g, j, k, l)
    if den == 0.0:
        raise DegeneracyError("a face through the edge is collapsed")
    arg = -det(m) / den
    if abs(arg) > 1.0 + CLAMP_TOL:
        raise DegeneracyError(f"dihedral cosine {arg!r} out of range")
    return float(np.arccos(min(1.0, max(-1.0, arg))))


def _others(a, b):
    return [x for x in range(4) if x not in (a, b)]


def phi_matrix(theta) -> np.ndarray:
    t = _theta(theta)
    phi = np.zeros((4, 4))
    for a, b in EDGES:
        c, d = _others(a, b)
        phi[a, b] = phi[b, a] = hyp_cosine_rule(t, (c, a, b, d))
    return phi


def hyp_sine_constant(theta) -> float:
    g = _cos(theta)
    faces = [_face_gsin_c(g, *f) for f in FACES]
    if min(faces) == 0.0:
        raise DegeneracyError("a face is collapsed")
    return gram_det_sqrt(det(g)) ** 2 / float(np.prod(faces))


def hyp_sin_phi(theta, pair=(2, 3)) -> float:
    """sin phi_kl from gsin6 and the two faces through edge kl."""
    k, l = pair
    i, j = _others(k, l)
    t = _theta(theta)
    g = _cos(t)
    den = _face_gsin_c(g, i, k, l) * _face_gsin_c(g, j, k, l)
    if den == 0.0:
        raise DegeneracyError("a face through the edge is collapsed")
    return gram_det_sqrt(det(g)) * np.sin(t[k, l]) / den


def gsin_of_angles(x: float, y: float, z: float) -> float:
    return gsin_cos(np.cos(x), np.cos(y), np.cos(z))


def face_angle(theta, v: int, a: int, b: int) -> float:
    """Angle at vertex v of face {v, a, b}."""
    t = _theta(theta)
    arg = (np.cos(t[a, b]) - np.cos(t[v, a]) * np.cos(t[v, b])) / (np.sin(t[v, a]) * np.sin(t[v, b]))
    if abs(arg) > 1.0 + CLAMP_TOL:
        raise DegeneracyError("face-angle cosine out of range")
    return float(np.arccos(min(1.0, max(-1.0, arg))))


def sine_rule_ratios(theta) -> np.ndarray:
    """The four ratios sin(phi at vertex v)/gsin3(face opposite v)."""
    t = _theta(theta)
    phi = phi_matrix(t)
    out = []
    for v in range(4):
        others = [x for x in range(4) if x != v]
        p = [phi[v, x] for x in others]
        out.append(gsin_of_angles(*p) / face_gsin(t, *others))
    return np.array(out)


def product_sine_ratios(theta) -> np.ndarray:
    """(sin phi_ab / sin t_ab)(sin phi_cd / sin t_cd) for the three opposite pairs."""
    t = _theta(theta)
    phi = phi_matrix(t)
    r = lambda a, b: np.sin(phi[a, b]) / np.sin(t[a, b])
    return np.array([r(0, 1) * r(2, 3), r(0, 2) * r(1, 3), r(0, 3) * r(1, 2)])


def hyp_polar_cosine_rule(phi, labels=(0, 1, 2, 3)) -> float:
    """cos theta_kl from the six dihedral angles."""
    i, j, k, l = labels
    c = np.cos(np.asarray(phi, dtype=float))
    m = np.array([
        [-c[j, k], c[i, k], -c[i, j]],
        [1.0, -c[k, l], c[j, l]],
        [-c[k, l], 1.0, -c[i, l]],
    ])
    den = gsin_cos(c[i, k], c[j, k], c[k, l]) * gsin_cos(c[i, l], c[j, l], c[k, l])
    if den == 0.0:
        raise DegeneracyError("polar face is collapsed")
    return det(m) / den


def hyp_polar_cleared_residual(tet: "HypersphericalTetrahedron", labels=(0, 1, 2, 3)) -> tuple[float, float]:
    """|det(M) - cos t_kl * den| and den for the polar cosine rule.

    The polar faces can be far thinner than the tetrahedron itself, so the
    quotient loses digits in proportion to 1/den; the cleared form does not.
    """
    i, j, k, l = labels
    c = np.cos(tet.phi)
    m = np.array([
        [-c[j, k], c[i, k], -c[i, j]],
        [1.0, -c[k, l], c[j, l]],
        [-c[k, l], 1.0, -c[i, l]],
    ])
    den = gsin_cos(c[i, k], c[j, k], c[k, l]) * gsin_cos(c[i, l], c[j, l], c[k, l])
    return float(abs(det(m) - np.cos(tet.theta[k, l]) * den)), float(den)


def cosine_ratios(theta, min_den: float = 1e-12) -> np.ndarray:
    t = _theta(theta)
    g = _cos(t)
    cp = np.cos(phi_matrix(t))
    combos = [((0, 1), (2, 3), (0, 2), (1, 3)), ((0, 2), (1, 3), (0, 3), (1, 2)), ((0, 3), (1, 2), (0, 1), (2, 3))]
    out = []
    for p, q, r, s in combos:
        den = g[p] * g[q] - g[r] * g[s]
        if abs(den) < min_den:
            raise IndeterminateRatioError("cosine-ratio denominator vanishes")
        out.append((cp[p] * cp[q] - cp[r] * cp[s]) / den)
    return np.array(out)


def cosine_ratio_constant(theta, spread_tol: float = 1e-8) -> float:
    r = cosine_ratios(theta)
    if np.ptp(r) > spread_tol:
        raise IndeterminateRatioError(f"cosine ratios disagree by {np.ptp(r):.3e}")
    return float(np.mean(r))


def vertex_cosine_rule(a_ijk: float, a_jkl: float, a_ijl: float) -> float:
    """cos phi_jk from the three face angles at vertex j."""
    v = (np.cos(a_ijk) * np.cos(a_jkl) - np.cos(a_ijl)) / (np.sin(a_ijk) * np.sin(a_jkl))
    if abs(v) > 1.0 + CLAMP_TOL:
        raise NonRealizableError(f"vertex cosine {v!r} out of range")
    return float(v)


def vertex_polar_cosine(phi_jk: float, phi_ij: float, phi_jl: float, sign: int = -1) -> float:
    """cos alpha_j^(ijl) from the dihedral angles at vertex j.

    With the exterior convention the identity carries ``-cos phi_jk``
    (``sign=-1``); ``sign=+1`` evaluates the variant with ``+cos phi_jk``.
    """
    return (sign * np.cos(phi_jk) + np.cos(phi_ij) * np.cos(phi_jl)) / (np.sin(phi_ij) * np.sin(phi_jl))


def vertex_sine_ratios(theta, j: int = 1) -> np.ndarray:
    """The vertex sine rule at j: three ratios plus the gsin3-of-angles form."""
    t = _theta(theta)
    phi = phi_matrix(t)
    i, k, l = [x for x in range(4) if x != j]
    a_ijk, a_ijl, a_jkl = face_angle(t, j, i, k), face_angle(t, j, i, l), face_angle(t, j, k, l)
    return np.array([
        np.sin(phi[j, k]) / np.sin(a_ijl),
        np.sin(phi[j, l]) / np.sin(a_ijk),
        np.sin(phi[i, j]) / np.sin(a_jkl),
        gsin_of_angles(a_ijk, a_ijl, a_jkl) / (np.sin(a_ijk) * np.sin(a_ijl) * np.sin(a_jkl)),
    ])


def prop11_sides(theta, labels=(0, 1, 2, 3)) -> tuple[float, float]:
    i, j, k, l = labels
    t = _theta(theta)
    g = _cos(t)
    phi = phi_matrix(t)
    g6sq = max(det(g), 0.0)
    f_jkl = _face_gsin_c(g, j, k, l)
    if f_jkl == 0.0:
        raise DegeneracyError("face jkl is collapsed")
    lhs = g6sq * np.cos(face_angle(t, l, j, k)) * np.sin(t[j, l]) * np.sin(t[k, l]) / f_jkl ** 2
    rhs = _face_gsin_c(g, i, j, l) * _face_gsin_c(g, i, k, l) * (
        np.cos(phi[j, l]) * np.cos(phi[k, l]) - np.cos(phi[i, l]))
    return float(lhs), float(rhs)


def prop11_residual(theta, labels=(0, 1, 2, 3)) -> float:
    lhs, rhs = prop11_sides(theta, labels)
    return abs(lhs - rhs)


def gram_desnanot_residual(theta) -> float:
    return desnanot_jacobi_residual(_cos(theta))


@dataclass(frozen=True)
class HypersphericalTetrahedron:
    """Tetrahedron on S^3 with the central angles as its only free data."""

    theta: np.ndarray
    vectors: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", _theta(self.theta))

    @classmethod
    def from_six(cls, six) -> "HypersphericalTetrahedron":
        return cls(theta_matrix(six))

    @classmethod
    def from_vectors(cls, n) -> "HypersphericalTetrahedron":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n, axis=1, keepdims=True)
        g = np.clip(n @ n.T, -1.0, 1.0)
        t = np.arccos(g)
        np.fill_diagonal(t, 0.0)
        return cls(t, vectors=n)

    @cached_property
    def cos(self) -> np.ndarray:
        return _cos(self.theta)

    @cached_property
    def gsin6(self) -> float:
        return gsin6(self.theta)

    @cached_property
    def phi(self) -> np.ndarray:
        return phi_matrix(self.theta)

    @cached_property
    def k_H(self) -> float:
        return hyp_sine_constant(self.theta)

    def face_gsin(self, a, b, c) -> float:
        return face_gsin(self.theta, a, b, c)

    def alpha(self, v, a, b) -> float:
        return face_angle(self.theta, v, a, b)

    def six(self) -> np.ndarray:
        return np.array([self.theta[e] for e in EDGES])

    def face_normal(self, a, b, c) -> np.ndarray:
        if self.vectors is None:
            raise ValueError("tetrahedron was built without vectors")
        n = self.vectors
        v = cross_nd([n[a], n[b], n[c]])
        return v / np.linalg.norm(v)

    def vector_cos_phi(self, a, b) -> float:
        """-u_{cab} . u_{abd} straight from the vertex vectors."""
        c, d = _others(a, b)
        return float(-(self.face_normal(c, a, b) @ self.face_normal(a, b, d)))


def hyp_four_parts_residual(tet: HypersphericalTetrahedron, labels=(0, 1, 2, 3)) -> float:
    """Max residual of the four-parts pair, denominators cleared.

    Line one is multiplied through by sin t_ij sin t_ik sin A_ijk, line two by
    sin t_ij sin A_ijk, where A_xyz is the face angle at i. The pair holds
    for the interior dihedral angle psi = pi - phi, which is substituted here.
    """
    i, j, k, l = labels
    t = tet.theta
    s, c = np.sin, np.cos
    cpsi = lambda a, b: -c(tet.phi[a, b])
    a_l, a_k = tet.alpha(i, j, l), tet.alpha(i, j, k)
    f_ijk, f_jkl, f_ikl = tet.face_gsin(i, j, k), tet.face_gsin(j, k, l), tet.face_gsin(i, k, l)
    bracket = c(a_l) * s(a_k) - s(a_l) * c(a_k) * cpsi(i, j)  # sin A_ijk cos A_ijl (1 - tan cot cos)
    lhs1 = f_jkl * cpsi(j, k) * s(t[i, j]) * s(t[i, k]) * s(a_k)
    rhs1 = f_ijk * (
        c(t[i, l]) * s(t[i, j]) * s(t[i, k]) * s(a_k)
        - s(t[i, l]) * c(t[i, k]) * s(t[i, j]) * cpsi(i, j) * s(a_l)
        - s(t[i, l]) * c(t[i, j]) * s(t[i, k]) * bracket
    )
    lhs2 = f_ikl * cpsi(i, k) * s(t[i, j]) * s(a_k)
    rhs2 = f_ijk * s(t[i, l]) * bracket
    return float(max(abs(lhs1 - rhs1), abs(lhs2 - rhs2)))


def hyp_five_parts_residual(tet: HypersphericalTetrahedron, labels=(0, 1, 2, 3), form: str = "projection") -> float:
    """Five-parts analogue for the polar vectors.

    ``form="projection"``: the polar-vector expansion
    u_ijk = [f_ijl cos t_kl u_ijl - f_jkl cos t_il u_jlk + f_ikl cos t_jl u_lki]/f_ijk + (normal part)
    dotted with u_ijl, written through dihedral angles:
    f_ijk cos phi_ij + f_ijl cos t_kl + f_jkl cos t_il cos phi_jl + f_ikl cos t_jl cos phi_il = 0.

    ``form="printed"``: the four-term display taken literally (exterior phi);
    it does not vanish on generic tetrahedra and is reported, not asserted.
    """
    i, j, k, l = labels
    t = tet.theta
    cp = lambda a, b: np.cos(tet.phi[a, b])
    sp = lambda a, b: np.sin(tet.phi[a, b])
    f_ijk, f_ijl, f_jkl, f_ikl = tet.face_gsin(i, j, k), tet.face_gsin(i, j, l), tet.face_gsin(j, k, l), tet.face_gsin(i, k, l)
    if form == "projection":
        r = (f_ijk * cp(i, j) + f_ijl * np.cos(t[k, l])
             + f_jkl * np.cos(t[i, l]) * cp(j, l) + f_ikl * np.cos(t[j, l]) * cp(i, l))
        return float(abs(r))
    if form == "printed":
        lhs = cp(j, k) * cp(j, l) * f_ijk
        rhs = (cp(i, j) * sp(j, l) * f_ijk + np.cos(t[k, l]) * sp(j, l) * f_ijl
               + cp(j, l) ** 2 * cp(i, j) * f_ijk + np.cos(t[j, l]) * cp(i, l) * sp(j, l) ** 2 * f_ikl)
        return float(abs(lhs - rhs))
    raise ValueError(f"unknown form {form!r}")


@dataclass(frozen=True)
class TetraCollapse:
    gsin6: float
    vertex_triple_sines: tuple[float, float, float, float]
    vanishing: tuple[bool, bool, bool, bool]
    signed_sums: tuple[float, float, float, float]


def collapse_tetrahedron(theta, gsin_tol: float = 1e-6, vanish_tol: float = 1e-8) -> TetraCollapse:
    """Triple sines of the dihedral angles at each vertex of a flat tetrahedron.

    The dihedral cosines come straight from the cosine rule (no arccos round
    trip), since the angles sit at 0 or pi where arccos loses precision.
    """
    t = _theta(theta)
    g = _cos(t)
    g6 = float(np.sqrt(max(det(g), 0.0)))
    if g6 >= gsin_tol:
        raise NotCollapsedError(f"gsin6 = {g6:.3e} is above {gsin_tol:g}")
    cphi = np.zeros((4, 4))
    for a, b in EDGES:
        c, d = _others(a, b)
        m = np.array([[g[c, a], g[c, b], g[c, d]], [1.0, g[a, b], g[a, d]], [g[a, b], 1.0, g[b, d]]])
        v = -det(m) / (_face_gsin_c(g, c, a, b) * _face_gsin_c(g, a, b, d))
        cphi[a, b] = cphi[b, a] = v
    sines, sums = [], []
    for v in range(4):
        o = [x for x in range(4) if x != v]
        x, y, z = cphi[v, o[0]], cphi[v, o[1]], cphi[v, o[2]]
        d3 = 1 - x * x - y * y - z * z + 2 * x * y * z
        sines.append(float(np.sqrt(max(d3, 0.0))))
        sums.append(float(sum(np.arccos(np.clip([x, y, z], -1, 1)))))
    van = tuple(s < vanish_tol for s in sines)
    return TetraCollapse(g6, tuple(sines), van, tuple(sums))


def equifacial_tetrahedron(t_a: float, t_b: float, t_c: float) -> HypersphericalTetrahedron:
    """Tetrahedron with opposite edges equal: t_01 = t_23 = t_a, t_02 = t_13 = t_b, t_03 = t_12 = t_c.

    Its half-turn symmetries swap each pair of opposite edges, so opposite
    dihedral angles coincide as well; every face is congruent to every other.
    """
    tet = HypersphericalTetrahedron.from_six([t_a, t_b, t_c, t_c, t_b, t_a])
    if tet.gsin6 <= 0.0:
        raise DegeneracyError("equifacial data is flat")
    return tet


symmetric_tetrahedron = equifacial_tetrahedron


def opposite_dihedral_gap(tet: HypersphericalTetrahedron) -> float:
    p = tet.phi
    return float(max(abs(p[0, 1] - p[2, 3]), abs(p[0, 2] - p[1, 3]), abs(p[0, 3] - p[1, 2])))


def all_labelings():
    return list(permutations(range(4)))


