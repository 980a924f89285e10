"""Spherical triangles: generalized sine, cosine/sine/polar rules, excess,
four- and five-parts formulae and the coplanar collapse."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import DegeneracyError, NonRealizableError, NotCollapsedError, NotSphericalError
from ..multivec import cross_nd

NEG_DET_TOL = 1e-12
CLAMP_TOL = 1e-9


def clamped_arccos(x: float, what: str = "cosine") -> float:
    if abs(x) > 1.0 + CLAMP_TOL or not np.isfinite(x):
        raise DegeneracyError(f"{what} {x!r} outside [-1, 1]")
    return float(np.arccos(min(1.0, max(-1.0, x))))


def gram_det_sqrt(d: float) -> float:
    """sqrt of a Gram determinant, tolerating tiny negative rounding."""
    if d < -NEG_DET_TOL:
        raise NonRealizableError(f"Gram determinant {d:.3e} is negative")
    return float(np.sqrt(max(d, 0.0)))


def gsin_cos(c_ij: float, c_ik: float, c_jk: float) -> float:
    d = 1.0 - c_ij * c_ij - c_ik * c_ik - c_jk * c_jk + 2.0 * c_ij * c_ik * c_jk
    return gram_det_sqrt(d)


def _check_angles(*angles):
    for a in angles:
        if not 0.0 < a < np.pi:
            raise NonRealizableError(f"angle {a!r} outside (0, pi)")


def gsin3(t_ij: float, t_ik: float, t_jk: float) -> float:
    """Generalized sine of three central angles (sqrt of the cosine Gram det).

    Evaluated as 4 sin s sin(s-a) sin(s-b) sin(s-c) with s the half
    perimeter, which equals the Gram determinant but keeps relative accuracy
    for thin triangles.
    """
    _check_angles(t_ij, t_ik, t_jk)
    s = 0.5 * (t_ij + t_ik + t_jk)
    d = 4.0 * np.sin(s) * np.sin(s - t_ij) * np.sin(s - t_ik) * np.sin(s - t_jk)
    return gram_det_sqrt(float(d))


def spherical_cosine_rule(t_ij: float, t_ik: float, t_jk: float) -> float:
    """Angle alpha_j at vertex j, between the sides to i and to k."""
    _check_angles(t_ij, t_ik, t_jk)
    num = np.cos(t_ik) - np.cos(t_ij) * np.cos(t_jk)
    den = np.sin(t_ij) * np.sin(t_jk)
    arg = num / den
    if abs(arg) > 1.0 + CLAMP_TOL:
        raise DegeneracyError(f"cosine-rule argument {arg:.12g} out of range")
    return float(np.arccos(min(1.0, max(-1.0, arg))))


def spherical_sine_constant(t_ij: float, t_ik: float, t_jk: float) -> float:
    g = gsin3(t_ij, t_ik, t_jk)
    if g == 0.0:
        raise DegeneracyError("collapsed triangle has no sine-rule constant")
    return g / (np.sin(t_ij) * np.sin(t_ik) * np.sin(t_jk))


def spherical_polar_cosine_rule(a_i: float, a_j: float, a_k: float) -> float:
    """Side theta_jk opposite a_i from the three angles."""
    _check_angles(a_i, a_j, a_k)
    if a_i + a_j + a_k <= np.pi:
        raise NotSphericalError("angle sum must exceed pi")
    arg = (np.cos(a_j) * np.cos(a_k) + np.cos(a_i)) / (np.sin(a_j) * np.sin(a_k))
    return clamped_arccos(arg, "polar cosine-rule argument")


def spherical_excess(a_i: float, a_j: float, a_k: float) -> float:
    s = a_i + a_j + a_k
    if s <= np.pi:
        raise NotSphericalError("angle sum must exceed pi")
    return s - np.pi


def sine_constant_from_angles(a_i: float, a_j: float, a_k: float) -> float:
    """The sine-rule constant written through the angles alone."""
    # polar Gram determinant in half-sum form over the polar sides pi - a,
    # which avoids cancellation when the triangle is nearly collapsed
    x = np.pi - np.array([a_i, a_j, a_k], dtype=float)
    s = 0.5 * x.sum()
    d = 4.0 * np.sin(s) * np.sin(s - x[0]) * np.sin(s - x[1]) * np.sin(s - x[2])
    if d <= 0.0:
        raise DegeneracyError("polar determinant is not positive")
    return float(np.sin(a_i) * np.sin(a_j) * np.sin(a_k) / np.sqrt(d))


@dataclass(frozen=True)
class SphericalTriangle:
    """Triangle on the unit 2-sphere; the three sides are primary data.

    Labels are (i, j, k) = (0, 1, 2); ``alpha_i`` sits opposite ``theta_jk``.
    """

    theta_ij: float
    theta_ik: float
    theta_jk: float
    vectors: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        _check_angles(self.theta_ij, self.theta_ik, self.theta_jk)

    @classmethod
    def from_vectors(cls, n) -> "SphericalTriangle":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n, axis=1, keepdims=True)
        c = lambda a, b: float(np.clip(n[a] @ n[b], -1.0, 1.0))
        return cls(np.arccos(c(0, 1)), np.arccos(c(0, 2)), np.arccos(c(1, 2)), vectors=n)

    @property
    def thetas(self) -> tuple[float, float, float]:
        return (self.theta_ij, self.theta_ik, self.theta_jk)

    @cached_property
    def gsin(self) -> float:
        return gsin3(*self.thetas)

    @cached_property
    def alpha_i(self) -> float:
        return spherical_cosine_rule(self.theta_ij, self.theta_jk, self.theta_ik)

    @cached_property
    def alpha_j(self) -> float:
        return spherical_cosine_rule(self.theta_ij, self.theta_ik, self.theta_jk)

    @cached_property
    def alpha_k(self) -> float:
        return spherical_cosine_rule(self.theta_ik, self.theta_ij, self.theta_jk)

    @property
    def alphas(self) -> tuple[float, float, float]:
        return (self.alpha_i, self.alpha_j, self.alpha_k)

    @cached_property
    def k(self) -> float:
        return spherical_sine_constant(*self.thetas)

    def sine_ratios(self) -> np.ndarray:
        return np.array([
            np.sin(self.alpha_i) / np.sin(self.theta_jk),
            np.sin(self.alpha_j) / np.sin(self.theta_ik),
            np.sin(self.alpha_k) / np.sin(self.theta_ij),
        ])

    def area(self) -> float:
        return spherical_excess(*self.alphas)

    def polar_vectors(self) -> dict[str, np.ndarray]:
        """Unit normals u_ij, u_jk, u_ik of the three great circles."""
        if self.vectors is None:
            raise ValueError("triangle was built without vectors")
        n = self.vectors
        unit = lambda v: v / np.linalg.norm(v)
        return {
            "ij": unit(cross_nd([n[0], n[1]])),
            "jk": unit(cross_nd([n[1], n[2]])),
            "ik": unit(cross_nd([n[0], n[2]])),
        }

    def vector_alphas(self) -> tuple[float, float, float]:
        """Angles from the normals: u_ij . u_jk = -cos alpha_j, and cyclic."""
        u = self.polar_vectors()
        u_ki = -u["ik"]
        u_kj = -u["jk"]
        a_j = np.arccos(np.clip(-(u["ij"] @ u["jk"]), -1, 1))
        a_k = np.arccos(np.clip(-(u["jk"] @ u_ki), -1, 1))
        a_i = np.arccos(np.clip(-(u_ki @ u["ij"]), -1, 1))
        del u_kj
        return float(a_i), float(a_j), float(a_k)


def four_parts_residual(tri: SphericalTriangle) -> float:
    """cot t_ij sin t_jk = cot a_k sin a_j + cos t_jk cos a_j, denominators cleared."""
    t_ij, t_ik, t_jk = tri.thetas
    a_i, a_j, a_k = tri.alphas
    lhs = np.cos(t_ij) * np.sin(t_jk) * np.sin(a_k)
    rhs = np.sin(t_ij) * (np.cos(a_k) * np.sin(a_j) + np.cos(t_jk) * np.cos(a_j) * np.sin(a_k))
    return float(abs(lhs - rhs))


def five_parts_residual(tri: SphericalTriangle, form: str = "cos") -> float:
    """sin a_j cos t_jk = cos a_i sin a_k + cos t_ik sin a_i cos a_k.

    ``form="cot"`` evaluates the variant with cot t_jk on the left (cleared
    by sin t_jk); that variant is not an identity and is kept for the record.
    """
    t_ij, t_ik, t_jk = tri.thetas
    a_i, a_j, a_k = tri.alphas
    rhs = np.cos(a_i) * np.sin(a_k) + np.cos(t_ik) * np.sin(a_i) * np.cos(a_k)
    if form == "cos":
        return float(abs(np.sin(a_j) * np.cos(t_jk) - rhs))
    if form == "cot":
        return float(abs(np.cos(t_jk) * np.sin(a_j) - np.sin(t_jk) * rhs))
    raise ValueError(f"unknown form {form!r}")


@dataclass(frozen=True)
class TriangleCollapse:
    branch: str  # "minus": t_ij = t_ik + t_jk ; "plus": t_ij = |t_ik - t_jk|
    residual: float
    other_residual: float
    gsin: float


def collapse_triangle(t_ij: float, t_ik: float, t_jk: float, gsin_tol: float = 1e-6) -> TriangleCollapse:
    """Pick the cosine-addition branch of a collapsed triangle.

    cos t_ij = cos t_ik cos t_jk -/+ sin t_ik sin t_jk.
    """
    c = np.cos([t_ij, t_ik, t_jk])
    d = 1.0 - c[0] ** 2 - c[1] ** 2 - c[2] ** 2 + 2 * c[0] * c[1] * c[2]
    g = float(np.sqrt(max(d, 0.0)))
    if g >= gsin_tol:
        raise NotCollapsedError(f"generalized sine {g:.3e} is above {gsin_tol:g}")
    base = np.cos(t_ik) * np.cos(t_jk)
    ss = np.sin(t_ik) * np.sin(t_jk)
    r_minus = abs(np.cos(t_ij) - (base - ss))
    r_plus = abs(np.cos(t_ij) - (base + ss))
    if r_minus <= r_plus:
        return TriangleCollapse("minus", float(r_minus), float(r_plus), g)
    return TriangleCollapse("plus", float(r_plus), float(r_minus), g)
