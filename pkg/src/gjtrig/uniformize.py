"""Dictionaries between simplex trigonometry and (generalized) elliptic functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .elliptic import EllipticModulus, amplitude, complete_K, incomplete_F, jacobi, jacobi_param
from .errors import (
    ConstraintError,
    DegeneracyError,
    DomainError,
    InadmissibleModulusError,
    NotSymmetricError,
    TangentError,
)
from .gjelliptic import GJModuli, gj_eval, gj_invert_s
from .simplex_trig.spherical import SphericalTriangle, gsin_cos
from .simplex_trig.tetra import (
    EDGES,
    FACES,
    HypersphericalTetrahedron,
    equifacial_tetrahedron,
    gsin_of_angles,
    opposite_dihedral_gap,
)

# ---------------------------------------------------------------- spherical


@dataclass(frozen=True)
class UniformizedTriangle:
    """Triangle built from b-variables with modulus mu = 1/k.

    ``b[0]`` pairs with alpha_i and theta_jk, ``b[1]`` with alpha_j and
    theta_ik, ``b[2]`` with alpha_k and theta_ij.
    """

    mu: float
    b: tuple[float, float, float]
    triangle: SphericalTriangle
    alphas: tuple[float, float, float]

    def residuals(self) -> dict[str, float]:
        """Cosine rule, sine constant (relative to 1/mu), sine rule and the b-dictionary."""
        tri, mu = self.triangle, self.mu
        jt = [jacobi(x, mu) for x in self.b]
        opp = (tri.theta_jk, tri.theta_ik, tri.theta_ij)
        return {
            "cosine_rule": max(abs(a - b) for a, b in zip(tri.alphas, self.alphas)),
            # relative: tri.k is a ratio of small quantities for tiny triangles
            "sine_constant": abs(mu * tri.k - 1.0),
            "sine_rule": max(abs(mu * math.sin(a) - math.sin(th)) for a, th in zip(tri.alphas, opp)),
            "sn": max(abs(math.sin(a) - t.sn) for a, t in zip(self.alphas, jt)),
            "dn": max(abs(math.cos(th) - t.dn) for th, t in zip(opp, jt)),
        }

    def real_branch_residuals(self) -> dict[str, float]:
        """cn(b_i) = -cn(b_j + b_k) and dn(b_i) = dn(b_j + b_k) on b_i + b_j + b_k = 2K.

        The ``*_swapped`` entries evaluate the opposite sign pair
        (cn equal, dn opposite); they do not vanish on this branch.
        """
        mu = self.mu
        out = {"cn": 0.0, "dn": 0.0, "cn_swapped": 0.0, "dn_swapped": 0.0}
        for r in range(3):
            bi = self.b[r]
            bj, bk = [self.b[s] for s in range(3) if s != r]
            ti, ts = jacobi(bi, mu), jacobi(bj + bk, mu)
            out["cn"] = max(out["cn"], abs(ti.cn + ts.cn))
            out["dn"] = max(out["dn"], abs(ti.dn - ts.dn))
            out["cn_swapped"] = max(out["cn_swapped"], abs(ti.cn - ts.cn))
            out["dn_swapped"] = max(out["dn_swapped"], abs(ti.dn + ts.dn))
        return out


def triangle_from_b(b_i: float, b_j: float, mu: float) -> UniformizedTriangle:
    """alpha = am(b; mu), cos theta = dn(b; mu), with b_k = 2K(mu) - b_i - b_j."""
    if not 0.0 < mu < 1.0:
        raise InadmissibleModulusError("mu must lie in (0, 1)")
    K = complete_K(mu)
    b_k = 2.0 * K - b_i - b_j
    if b_i <= 0.0 or b_j <= 0.0 or b_k <= 0.0:
        raise ConstraintError(f"need positive b with b_i + b_j < 2K = {2 * K}")
    b = (float(b_i), float(b_j), float(b_k))
    alphas = tuple(amplitude(x, mu) for x in b)
    # sin theta = mu sn(b), cos theta = dn(b); theta_jk, theta_ik, theta_ij
    thetas = [math.atan2(mu * t.sn, t.dn) for t in (jacobi(x, mu) for x in b)]
    try:
        tri = SphericalTriangle(thetas[2], thetas[1], thetas[0])
        if tri.gsin == 0.0:
            raise DegeneracyError("b-triangle is collapsed")
    except Exception as exc:
        raise DegeneracyError(f"b-data does not give a proper triangle: {exc}") from exc
    return UniformizedTriangle(float(mu), b, tri, alphas)


def verify_a_parameterization(tri: SphericalTriangle) -> dict[str, float]:
    """Check the a-dictionary with modulus k = sine constant > 1.

    a_i is obtained through the reciprocal modulus: k a_i = b_i = F(alpha_i; 1/k),
    and sn, cn, dn at parameter k^2 > 1 come from the reciprocal-modulus
    transformation. On the real branch a_i + a_j + a_k = 2K(1/k)/k the
    consequences read cn(a_i) = cn(a_j + a_k), dn(a_i) = -dn(a_j + a_k);
    the ``*_swapped`` entries report the opposite pair.

    Here cos theta = dn(b; 1/k) > 0, so only triangles whose three sides
    are below pi/2 are covered; others raise ``DomainError``.
    """
    k = tri.k
    if k < 1.0 + 1e-9:
        raise InadmissibleModulusError(f"sine constant {k!r} is not above 1")
    if max(tri.thetas) >= 0.5 * math.pi:
        raise DomainError("a side reaches pi/2; cos theta = dn would have to be non-positive")
    mu = 1.0 / k
    m = k * k
    alphas = tri.alphas
    opp = (tri.theta_jk, tri.theta_ik, tri.theta_ij)
    a = [incomplete_F(al, mu) / k for al in alphas]
    out = {"sn": 0.0, "cn": 0.0, "dn": 0.0, "sum": 0.0,
           "cn_add": 0.0, "dn_add": 0.0, "cn_add_swapped": 0.0, "dn_add_swapped": 0.0}
    for r in range(3):
        s, c, d = jacobi_param(a[r], m)
        out["sn"] = max(out["sn"], abs(s - math.sin(opp[r])))
        out["cn"] = max(out["cn"], abs(c - math.cos(opp[r])))
        out["dn"] = max(out["dn"], abs(d - math.cos(alphas[r])))
        aj, ak = [a[q] for q in range(3) if q != r]
        _, c2, d2 = jacobi_param(aj + ak, m)
        out["cn_add"] = max(out["cn_add"], abs(c - c2))
        out["dn_add"] = max(out["dn_add"], abs(d + d2))
        out["cn_add_swapped"] = max(out["cn_add_swapped"], abs(c + c2))
        out["dn_add_swapped"] = max(out["dn_add_swapped"], abs(d - d2))
    out["sum"] = abs(sum(a) - 2.0 * complete_K(mu) / k)
    return out


def spherical_W(thetas, k: float) -> float:
    t_ij, t_ik, t_jk = thetas
    g = gsin_cos(math.cos(t_ij), math.cos(t_ik), math.cos(t_jk))
    return k * k * (math.sin(t_ij) * math.sin(t_ik) * math.sin(t_jk)) ** 2 - g * g


def spherical_W_derivative_residual(tri: SphericalTriangle, h: float = 1e-6) -> float:
    """dW/dtheta_ij at fixed k against 2 sin t_ij sin t_ik sin t_jk cos a_i cos a_j."""
    t = list(tri.thetas)
    k = tri.k
    tp, tm = t.copy(), t.copy()
    tp[0] += h
    tm[0] -= h
    fd = (spherical_W(tp, k) - spherical_W(tm, k)) / (2 * h)
    formula = 2 * math.sin(t[0]) * math.sin(t[1]) * math.sin(t[2]) * math.cos(tri.alpha_i) * math.cos(tri.alpha_j)
    return abs(fd - formula)


def _k_of(thetas) -> float:
    t_ij, t_ik, t_jk = thetas
    g = gsin_cos(math.cos(t_ij), math.cos(t_ik), math.cos(t_jk))
    return g / (math.sin(t_ij) * math.sin(t_ik) * math.sin(t_jk))


def _num_grad(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def level_set_step(f, x0, direction, step: float, tol: float = 1e-14, max_iter: int = 50):
    """Move from x0 along ``direction`` projected onto the tangent of f = f(x0),
    then Newton-correct back onto the level set along the gradient."""
    x0 = np.asarray(x0, dtype=float)
    target = f(x0)
    g = _num_grad(f, x0)
    gn = np.linalg.norm(g)
    if gn == 0.0:
        raise TangentError("constraint gradient vanishes")
    d = np.asarray(direction, dtype=float)
    d = d - (d @ g) / (gn * gn) * g
    dn = np.linalg.norm(d)
    if dn < 1e-12:
        raise TangentError("direction is normal to the level set")
    x = x0 + step * d / dn
    nrm = g / gn
    for _ in range(max_iter):
        r = f(x) - target
        if abs(r) < tol:
            return x
        gx = _num_grad(f, x)
        slope = gx @ nrm
        if slope == 0.0:
            raise TangentError("Newton correction stalled")
        x = x - r / slope * nrm
    if abs(f(x) - target) > 1e-12:
        raise TangentError("level-set correction did not converge")
    return x


def spherical_differential_residual(tri: SphericalTriangle, step: float, direction=None) -> float:
    """|sum d theta_jk / cos alpha_i| for a neighbour triangle with the same k.

    The weight 1/cos alpha_i is written as 1/(sign(cos alpha_i) sqrt(1 - k^2 sin^2 theta_jk)),
    i.e. the square-root form with its branch sign restored, evaluated at
    the start point; the residual is then second order in the step.
    """
    if step == 0.0:
        return 0.0
    t0 = np.array(tri.thetas)
    direction = np.array([1.0, -0.5, 0.25]) if direction is None else np.asarray(direction, float)
    t1 = level_set_step(_k_of, t0, direction, step)
    dt = t1 - t0
    k = tri.k
    # thetas are (ij, ik, jk); opposite angles are (k, j, i)
    opp = (tri.alpha_k, tri.alpha_j, tri.alpha_i)
    total = 0.0
    for d, th, al in zip(dt, t0, opp):
        root = math.sqrt(max(0.0, 1.0 - k * k * math.sin(th) ** 2))
        total += d / (math.copysign(root, math.cos(al)))
    return abs(total)


# ----------------------------------------------------------- tetrahedra (symmetric)


def _kH_of_equifacial(t) -> float:
    return equifacial_tetrahedron(*t).k_H


def hyp_W(theta6, kH: float) -> float:
    tet = HypersphericalTetrahedron.from_six(theta6)
    faces = np.prod([tet.face_gsin(*f) for f in FACES])
    return tet.gsin6 ** 4 - kH ** 2 * faces ** 2


def hyp_W_derivative(tet: HypersphericalTetrahedron, edge=(0, 1)) -> float:
    """dW/dtheta_ij = -2 gsin6 f_ikl f_jkl f_ijl f_ijk sin phi_ij (cos phi_il cos phi_jl + cos phi_ik cos phi_jk)."""
    i, j = edge
    k, l = [x for x in range(4) if x not in edge]
    cp = lambda a, b: math.cos(tet.phi[a, b])
    f = tet.face_gsin
    return (-2.0 * tet.gsin6 * f(i, k, l) * f(j, k, l) * f(i, j, l) * f(i, j, k)
            * math.sin(tet.phi[i, j]) * (cp(i, l) * cp(j, l) + cp(i, k) * cp(j, k)))


def hyp_W_derivative_residual(tet: HypersphericalTetrahedron, edge=(0, 1), h: float = 1e-6) -> float:
    six = tet.six()
    idx = EDGES.index(tuple(sorted(edge)))
    p, m = six.copy(), six.copy()
    p[idx] += h
    m[idx] -= h
    fd = (hyp_W(p, tet.k_H) - hyp_W(m, tet.k_H)) / (2 * h)
    return abs(fd - hyp_W_derivative(tet, edge))


@dataclass
class SymmetricTetReport:
    redsin: float
    differential: dict[float, float] = field(default_factory=dict)
    order_ratios: list[float] = field(default_factory=list)
    asymmetry: float = 0.0


def symmetric_tet_residuals(tet: HypersphericalTetrahedron, steps=(1e-3, 5e-4, 2.5e-4), direction=None,
                            sym_tol: float = 1e-8) -> SymmetricTetReport:
    """Reduced sine rule and the elliptic-integral differential on a symmetric tetrahedron.

    The differential moves inside the opposite-edges-equal family at fixed
    k_H and evaluates sum over six edges of
    sqrt(k_H) sin t / (sign(cos phi) sqrt(1 - k_H sin^2 t)) dt
    with weights at the start point. The sign factor restores the branch of
    tan phi that the square root drops.
    """
    gap = opposite_dihedral_gap(tet)
    if gap > sym_tol:
        raise NotSymmetricError(f"opposite dihedral angles differ by {gap:.3e}")
    kH = tet.k_H
    redsin = max(abs(math.sin(tet.phi[e]) ** 2 - kH * math.sin(tet.theta[e]) ** 2) for e in EDGES)
    rep = SymmetricTetReport(redsin=redsin, asymmetry=gap)
    t = tet.theta
    opp_equal = abs(t[0, 1] - t[2, 3]) < 1e-12 and abs(t[0, 2] - t[1, 3]) < 1e-12 and abs(t[0, 3] - t[1, 2]) < 1e-12
    if not opp_equal:
        return rep
    t0 = np.array([t[0, 1], t[0, 2], t[0, 3]])
    direction = np.array([1.0, -0.3, -0.6]) if direction is None else np.asarray(direction, float)
    weights = []
    for e in EDGES:
        th = tet.theta[e]
        root = math.sqrt(max(0.0, 1.0 - kH * math.sin(th) ** 2))
        if root < 1e-12:
            return rep  # the weight is singular (cos phi = 0); no differential check
        weights.append(math.sqrt(kH) * math.sin(th) / math.copysign(root, math.cos(tet.phi[e])))
    w = np.array(weights)
    for h in steps:
        t1 = level_set_step(_kH_of_equifacial, t0, direction, h)
        d = t1 - t0
        d6 = np.array([d[0], d[1], d[2], d[2], d[1], d[0]])  # EDGES order 01,02,03,12,13,23
        rep.differential[h] = float(abs(w @ d6))
    vals = [rep.differential[h] for h in steps]
    rep.order_ratios = [vals[i] / vals[i + 1] for i in range(len(vals) - 1) if vals[i + 1] > 0]
    return rep


# ----------------------------------------------------------- tetrahedra (gj)


@dataclass
class GJTetrahedronReport:
    face_constants: list[float]
    vertex_constants: list[float]
    face_spread: float
    vertex_spread: float
    a: dict[tuple[int, int], float] | None = None
    sine_residual: float | None = None
    cosine_residual: float | None = None
    cosine_edges_checked: int = 0
    notes: list[str] = field(default_factory=list)


def face_constants(tet: HypersphericalTetrahedron) -> list[float]:
    out = []
    for f in FACES:
        a, b, c = f
        t = tet.theta
        out.append(tet.face_gsin(a, b, c) / (math.sin(t[a, b]) * math.sin(t[a, c]) * math.sin(t[b, c])))
    return out


def vertex_constants(tet: HypersphericalTetrahedron) -> list[float]:
    out = []
    for v in range(4):
        o = [x for x in range(4) if x != v]
        angs = [tet.alpha(v, o[0], o[1]), tet.alpha(v, o[0], o[2]), tet.alpha(v, o[1], o[2])]
        out.append(gsin_of_angles(*angs) / float(np.prod(np.sin(angs))))
    return out


def gj_identification_report(tet: HypersphericalTetrahedron, spread_tol: float = 1e-6) -> GJTetrahedronReport:
    """Face and vertex constants, and the two-modulus dictionary where it applies.

    With k1 the common face constant and k2 the common vertex constant, each
    edge jk gets a_jk = s^{-1}(sin theta_jk) under moduli (k1, k1 k2). The sine
    residuals compare k1 s, k1 k2 s with sin alpha_i^(ijk), sin phi_il for both
    choices of (i, l). The d2 = cos(dihedral) entry uses the interior
    dihedral angle pi - phi (sines agree for both conventions). Cosine
    residuals against (c, d1, d2) are checked only on edges whose three
    cosines are all non-negative, since s^{-1} returns the first branch.
    """
    fc, vc = face_constants(tet), vertex_constants(tet)
    rep = GJTetrahedronReport(fc, vc, float(np.ptp(fc)), float(np.ptp(vc)))
    if rep.face_spread > spread_tol or rep.vertex_spread > spread_tol:
        rep.notes.append("constants not common; identification inapplicable")
        return rep
    k1, k2 = float(np.mean(fc)), float(np.mean(vc))
    if k2 >= 1.0 or (k1 * k2) ** 2 >= 1.0:
        rep.notes.append("second modulus not below 1")
        return rep
    moduli = GJModuli.from_squares(k1 * k1, (k1 * k2) ** 2)
    rep.a, sres, cres, ncos = {}, 0.0, 0.0, 0
    for j, k in EDGES:
        i, l = [x for x in range(4) if x not in (j, k)]
        x = math.sin(tet.theta[j, k])
        a = gj_invert_s(x, moduli)
        rep.a[(j, k)] = a
        q = gj_eval(a, moduli)
        for ii, ll in ((i, l), (l, i)):
            al = tet.alpha(ii, j, k)
            ph = tet.phi[ii, ll]
            sres = max(sres, abs(q.s - x), abs(k1 * q.s - math.sin(al)), abs(k1 * k2 * q.s - math.sin(ph)))
            cs = (math.cos(tet.theta[j, k]), math.cos(al), -math.cos(ph))
            if min(cs) >= 0.0:
                ncos += 1
                cres = max(cres, abs(q.c - cs[0]), abs(q.d1 - cs[1]), abs(q.d2 - cs[2]))
    rep.sine_residual = sres
    rep.cosine_residual = cres if ncos else None
    rep.cosine_edges_checked = ncos
    return rep


def gj_angles_from_u(u: float, k1: float, k2: float) -> tuple[tuple[float, float, float], dict[str, float]]:
    """(theta, alpha, phi) with sin = (s, k1 s, k1 k2 s) and cos = (c, d1, d2).

    Returns the angles and the pointwise identity residuals under the
    substitution cos theta = c, cos alpha = d1, cos phi = d2.
    """
    if not (0.0 < k1 < 1.0 and 0.0 <= k2 < 1.0):
        raise InadmissibleModulusError("need k1 in (0,1) and k2 in [0,1)")
    m = GJModuli.of(k1, k1 * k2)
    q = gj_eval(u, m)
    if abs(k1 * q.s) > 1.0:
        raise InadmissibleModulusError("k1 s(u) exceeds 1")
    th = math.atan2(q.s, q.c)
    al = math.atan2(k1 * q.s, q.d1)
    ph = math.atan2(k1 * k2 * q.s, q.d2)
    res = {
        "theta": abs(math.cos(th) - q.c),
        "alpha": abs(math.cos(al) - q.d1),
        "phi": abs(math.cos(ph) - q.d2),
        **q.identity_residuals(),
    }
    return (th, al, ph), res


__all__ = [
    "UniformizedTriangle", "triangle_from_b", "verify_a_parameterization",
    "spherical_W_derivative_residual", "spherical_differential_residual", "level_set_step",
    "hyp_W_derivative", "hyp_W_derivative_residual", "SymmetricTetReport", "symmetric_tet_residuals",
    "GJTetrahedronReport", "gj_identification_report", "gj_angles_from_u", "face_constants",
    "vertex_constants", "EllipticModulus",
]
