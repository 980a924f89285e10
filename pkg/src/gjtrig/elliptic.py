"""Real Jacobi elliptic functions and Legendre integrals, from scratch.

K by the arithmetic-geometric mean, F and E by Carlson's symmetric
integrals, sn/cn/dn/am by the descending Landen (Gauss) transformation.
Parameters outside [0, 1) are reached through the imaginary-modulus and
reciprocal-modulus transformations in :func:`jacobi_param`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, PoleError

LANDEN_TOL = 1e-15
LANDEN_MAX = 32
CARLSON_TOL = 1e-14


def _check_k(k: float) -> float:
    k = abs(float(k))
    if not k < 1.0:
        raise DomainError(f"modulus k = {k!r} must satisfy 0 <= k < 1")
    return k


def complementary(k: float) -> float:
    k = abs(float(k))
    return math.sqrt((1.0 - k) * (1.0 + k))


def agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_K(k: float) -> float:
    """Complete integral of the first kind, pi / (2 agm(1, k'))."""
    k = _check_k(k)
    return math.pi / (2.0 * agm(1.0, complementary(k)))


def complete_Kp(k: float) -> float:
    k = _check_k(k)
    if k == 0.0:
        return math.inf
    return math.pi / (2.0 * agm(1.0, k))


def carlson_rf(x: float, y: float, z: float) -> float:
    """R_F(x, y, z) by the duplication theorem; at most one argument may be 0."""
    if min(x, y, z) < 0.0 or (x + y == 0.0 or x + z == 0.0 or y + z == 0.0):
        raise DomainError("R_F needs non-negative arguments, at most one zero")
    for _ in range(100):
        lam = math.sqrt(x * y) + math.sqrt(x * z) + math.sqrt(y * z)
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        mu = (x + y + z) / 3.0
        dx, dy, dz = 1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu
        if max(abs(dx), abs(dy), abs(dz)) < CARLSON_TOL ** (1 / 6):
            break
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(mu)


def carlson_rd(x: float, y: float, z: float) -> float:
    if min(x, y) < 0.0 or x + y == 0.0 or z <= 0.0:
        raise DomainError("R_D needs x, y >= 0 (not both 0) and z > 0")
    total, fac = 0.0, 1.0
    for _ in range(100):
        lam = math.sqrt(x * y) + math.sqrt(x * z) + math.sqrt(y * z)
        total += fac / (math.sqrt(z) * (z + lam))
        fac *= 0.25
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        mu = (x + y + 3.0 * z) / 5.0
        dx, dy, dz = (mu - x) / mu, (mu - y) / mu, (mu - z) / mu
        if max(abs(dx), abs(dy), abs(dz)) < CARLSON_TOL ** (1 / 6):
            break
    ea = dx * dy
    eb = dz * dz
    ec = ea - eb
    ed = ea - 6.0 * eb
    ee = ed + ec + ec
    s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 9.0 / 52.0 * dz * ee) \
        + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))
    return 3.0 * total + fac * (1.0 + s) / (mu * math.sqrt(mu))


def _reduce(phi: float) -> tuple[int, float]:
    """phi = j*pi + r with r in [-pi/2, pi/2]."""
    j = math.floor(phi / math.pi + 0.5)
    return j, phi - j * math.pi


def incomplete_F(phi: float, k: float) -> float:
    """F(phi, k), extended to all real phi by F(phi + j pi) = F(phi) + 2 j K."""
    k = _check_k(k)
    j, r = _reduce(float(phi))
    s, c = math.sin(r), math.cos(r)
    base = s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0) if s != 0.0 else 0.0
    return base + 2 * j * complete_K(k) if j else base


def complete_E(k: float) -> float:
    k = _check_k(k)
    return carlson_rf(0.0, 1.0 - k * k, 1.0) - k * k * carlson_rd(0.0, 1.0 - k * k, 1.0) / 3.0


def incomplete_E(phi: float, k: float) -> float:
    k = _check_k(k)
    j, r = _reduce(float(phi))
    s, c = math.sin(r), math.cos(r)
    if s == 0.0:
        base = 0.0
    else:
        q = 1.0 - k * k * s * s
        base = s * carlson_rf(c * c, q, 1.0) - k * k * s ** 3 * carlson_rd(c * c, q, 1.0) / 3.0
    return base + 2 * j * complete_E(k) if j else base


@dataclass(frozen=True)
class EllipticModulus:
    k: float

    def __post_init__(self):
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def kp(self) -> float:
        return complementary(self.k)

    @cached_property
    def K(self) -> float:
        return complete_K(self.k)

    @cached_property
    def Kp(self) -> float:
        return complete_Kp(self.k)


@dataclass(frozen=True)
class JacobiTriple:
    u: float
    sn: float
    cn: float
    dn: float
    k: float
    am: float

    def pythagorean_residuals(self) -> tuple[float, float]:
        return (abs(self.sn ** 2 + self.cn ** 2 - 1.0), abs(self.dn ** 2 + self.k ** 2 * self.sn ** 2 - 1.0))


def amplitude(u: float, k: float) -> float:
    """am(u, k) by descending Landen; continuous and increasing in u."""
    k = _check_k(k)
    u = float(u)
    if k < LANDEN_TOL:
        return u
    a, c = [1.0], [k]
    b = complementary(k)
    for _ in range(LANDEN_MAX):
        an = 0.5 * (a[-1] + b)
        cn = 0.5 * (a[-1] - b)
        b = math.sqrt(a[-1] * b)
        a.append(an)
        c.append(cn)
        if abs(cn) < LANDEN_TOL:
            break
    n = len(a) - 1
    phi = (2 ** n) * a[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[i] / a[i] * math.sin(phi)))
    return phi


def jacobi(u: float, k: float) -> JacobiTriple:
    k = _check_k(k)
    phi = amplitude(u, k)
    s, c = math.sin(phi), math.cos(phi)
    d = math.sqrt(1.0 - k * k * s * s)
    return JacobiTriple(float(u), s, c, d, k, phi)


def amplitude_dk(u: float, k: float) -> float:
    """Partial derivative of am(u, k) with respect to k at fixed u.

    Implicit differentiation of u = F(am, k), using
    dF/dk = E/(k k'^2) - F/k - k sin cos / (k'^2 dn).
    """
    k = _check_k(k)
    if k == 0.0:
        return 0.0
    t = jacobi(u, k)
    kp2 = 1.0 - k * k
    dFdk = incomplete_E(t.am, k) / (k * kp2) - u / k - k * t.sn * t.cn / (kp2 * t.dn)
    return -t.dn * dFdk


def jacobi_param(u, m: float) -> tuple:
    """(sn, cn, dn) for any real parameter m = k^2 and real or complex u.

    m < 0 uses the imaginary-modulus transformation with mu = -m/(1-m);
    m > 1 the reciprocal-modulus one. Complex u is handled by the Jacobi
    imaginary transformation combined with the addition theorem.
    """
    m = float(m)
    if isinstance(u, complex) or np.iscomplexobj(u):
        return _jacobi_complex(complex(u), m)
    u = float(u)
    if 0.0 <= m < 1.0:
        t = jacobi(u, math.sqrt(m))
        return t.sn, t.cn, t.dn
    if m < 0.0:
        mu = -m / (1.0 - m)
        r = math.sqrt(1.0 - m)
        t = jacobi(u * r, math.sqrt(mu))
        # sd, cd, nd of the transformed argument
        return t.sn / (t.dn * r), t.cn / t.dn, 1.0 / t.dn
    if m == 1.0:
        return math.tanh(u), 1.0 / math.cosh(u), 1.0 / math.cosh(u)
    k = math.sqrt(m)
    t = jacobi(k * u, 1.0 / k)
    return t.sn / k, t.dn, t.cn


def _jacobi_complex(u: complex, m: float) -> tuple:
    x, y = u.real, u.imag
    if m < 0.0 or m > 1.0:
        # transform to a parameter in [0, 1) first, then recurse on the complex argument
        if m < 0.0:
            mu = -m / (1.0 - m)
            r = math.sqrt(1.0 - m)
            s, c, d = _jacobi_complex(u * r, mu)
            return s / (d * r), c / d, 1.0 / d
        k = math.sqrt(m)
        s, c, d = _jacobi_complex(u * k, 1.0 / m)
        return s / k, d, c
    s, c, d = jacobi_param(x, m)
    s1, c1, d1 = jacobi_param(y, 1.0 - m)
    # Jacobi imaginary transformation: sn(iy|m) = i sc(y|1-m), cn = nc, dn = dc
    den = c1 * c1 + m * s * s * s1 * s1
    sn = (s * d1 + 1j * c * d * s1 * c1) / den
    cn = (c * c1 - 1j * s * d * s1 * d1) / den
    dn = (d * c1 * d1 - 1j * m * s * c * s1) / den
    return sn, cn, dn


def sn_by_inversion(u: float, k: float, tol: float = 1e-15) -> float:
    """Oracle: sin(phi) with F(phi, k) = u, phi found by bisection."""
    k = _check_k(k)
    kk = complete_K(k)
    j = math.floor(u / (2.0 * kk) + 0.5)
    r = u - 2.0 * j * kk  # r in [-K, K]
    lo, hi = -math.pi / 2, math.pi / 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if incomplete_F(mid, k) < r:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return math.sin(0.5 * (lo + hi) + j * math.pi)


def derivative_residuals(u: float, k: float, h: float = 1e-5) -> tuple[float, float, float]:
    p, q = jacobi(u + h, k), jacobi(u - h, k)
    t = jacobi(u, k)
    d = lambda f: (getattr(p, f) - getattr(q, f)) / (2 * h)
    return (abs(d("sn") - t.cn * t.dn), abs(d("cn") + t.sn * t.dn), abs(d("dn") + k * k * t.sn * t.cn))


def spherical_addition_residuals(a_j: float, a_k: float, k: float) -> dict[str, float]:
    """Addition-formula residuals at the pair (a_j, a_k).

    ``cn``/``dn`` compare the direct value at a_j + a_k with the rational
    addition expression; ``rel1..rel3`` are the three intertwined relations.
    """
    j, kk, s = jacobi(a_j, k), jacobi(a_k, k), jacobi(a_j + a_k, k)
    m = k * k
    den = 1.0 - m * j.sn ** 2 * kk.sn ** 2
    cn_add = (j.cn * kk.cn - j.sn * kk.sn * j.dn * kk.dn) / den
    dn_add = (j.dn * kk.dn - m * j.sn * kk.sn * j.cn * kk.cn) / den
    # relations with (a_i, a_j) -> (a_j, a_k)
    rel1 = kk.cn * s.sn - (j.sn * kk.dn + j.dn * kk.sn * s.cn)
    rel2 = j.dn * s.sn - (j.cn * kk.sn + j.sn * kk.cn * s.dn)
    rel3 = j.sn * s.cn + kk.sn * s.dn - j.cn * kk.dn * s.sn
    return {"cn": abs(s.cn - cn_add), "dn": abs(s.dn - dn_add),
            "rel1": abs(rel1), "rel2": abs(rel2), "rel3": abs(rel3)}


def yang_baxter_terms(a1: float, a2: float, rho: float, k: float) -> tuple[float, float, float]:
    """P12, P23, P31 with P_pq = w_p(a_q) w_q(a_p) and a3 = 2K - a1 - a2."""
    a3 = 2.0 * complete_K(k) - a1 - a2
    t = [jacobi(a, k) for a in (a1, a2, a3)]
    for x in t:
        if abs(x.sn) < 1e-300:
            raise PoleError("sn vanishes at an argument")
    w = [
        lambda q: rho / t[q].sn,
        lambda q: rho * t[q].cn / t[q].sn,
        lambda q: rho * t[q].dn / t[q].sn,
    ]
    P = lambda p, q: w[p](q) * w[q](p)
    return P(0, 1), P(1, 2), P(2, 0)


def yang_baxter_residual(a1: float, a2: float, rho: float, k: float, form: str = "signed") -> float:
    """Residual of the w-relation on the real branch a1 + a2 + a3 = 2K.

    On this branch the relation holds as P12 + P23 - P31 = 0 (``form="signed"``);
    ``form="printed"`` evaluates the all-plus sum, which does not vanish.
    """
    p12, p23, p31 = yang_baxter_terms(a1, a2, rho, k)
    if form == "signed":
        return abs(p12 + p23 - p31)
    if form == "printed":
        return abs(p12 + p23 + p31)
    raise ValueError(f"unknown form {form!r}")
