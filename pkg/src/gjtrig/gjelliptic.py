"""Generalized Jacobi functions s, c, d1, d2 with two moduli.

Evaluation goes through standard Jacobi functions of parameter
kappa^2 = (k1^2 - k2^2)/(1 - k2^2) at the scaled argument k2' u. The
moduli are stored as squares so the same code serves the extended real
domain k1^2 > 1, k2^2 < 0 that the double-elliptic model needs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.integrate import IntegrationWarning, quad

from .elliptic import jacobi_param
from .errors import DegeneracyError, DomainError

IDENTITY_TOL = 1e-11


@dataclass(frozen=True)
class GJModuli:
    """Squared moduli m1 = k1^2, m2 = k2^2.

    The standard domain is 1 > k1 >= k2 >= 0. ``extended=True`` admits any
    real squares with m1 >= m2 and m2 < 1; the reduction's radicands
    1 - m2 cn^2 and m1 - m2 dn^2 stay positive there.
    """

    m1: float
    m2: float
    extended: bool = False

    def __post_init__(self):
        m1, m2 = float(self.m1), float(self.m2)
        object.__setattr__(self, "m1", m1)
        object.__setattr__(self, "m2", m2)
        if self.extended:
            if not (m2 < 1.0 and m1 >= m2):
                raise DomainError("extended moduli need m2 < 1 and m1 >= m2")
        elif not (0.0 <= m2 <= m1 < 1.0):
            raise DomainError(f"need 1 > k1 >= k2 >= 0, got k1^2={m1}, k2^2={m2}")

    @classmethod
    def of(cls, k1: float, k2: float) -> "GJModuli":
        if not 1.0 > k1 >= k2 >= 0.0:
            raise DomainError(f"need 1 > k1 >= k2 >= 0, got ({k1}, {k2})")
        return cls(k1 * k1, k2 * k2)

    @classmethod
    def from_squares(cls, m1: float, m2: float) -> "GJModuli":
        return cls(m1, m2, extended=True)

    @property
    def k1(self) -> float:
        return math.sqrt(self.m1) if self.m1 >= 0 else float("nan")

    @property
    def k2(self) -> float:
        return math.sqrt(self.m2) if self.m2 >= 0 else float("nan")

    @property
    def k2p_sq(self) -> float:
        return 1.0 - self.m2

    @property
    def kappa_sq(self) -> float:
        return (self.m1 - self.m2) / (1.0 - self.m2)

    @property
    def kappa(self) -> float:
        return math.sqrt(self.kappa_sq)


@dataclass(frozen=True)
class GJQuad:
    u: float
    s: float
    c: float
    d1: float
    d2: float
    moduli: GJModuli

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s, self.c, self.d1, self.d2)

    def identity_residuals(self) -> dict[str, float]:
        m1, m2 = self.moduli.m1, self.moduli.m2
        s, c, d1, d2 = self.as_tuple()
        return {
            "c2": abs(c * c - (1 - s * s)),
            "d1sq": abs(d1 * d1 - (1 - m1 * s * s)),
            "d2sq": abs(d2 * d2 - (1 - m2 * s * s)),
            "d1c": abs(d1 * d1 - m1 * c * c - (1 - m1)),
            "d2c": abs(d2 * d2 - m2 * c * c - (1 - m2)),
            "cross": abs(m1 * d2 * d2 - m2 * d1 * d1 - (m1 - m2)),
        }


def gj_eval(u: float, moduli: GJModuli) -> GJQuad:
    u = float(u)
    m2 = moduli.m2
    kp = math.sqrt(moduli.k2p_sq)
    sn, cn, dn = jacobi_param(kp * u, moduli.kappa_sq)
    q = math.sqrt(1.0 - m2 * cn * cn)  # k2'^2 + k2^2 sn^2 = 1 - k2^2 cn^2
    s = sn / q
    c = kp * cn / q
    # m1 - m2 dn^2 = (m1 - m2) q^2 / k2'^2, so the (m1 - m2) factor cancels
    # exactly; dividing it out numerically loses everything as k1 -> k2
    d2 = kp / q
    d1 = dn * d2
    return GJQuad(u, s, c, d1, d2, moduli)


def _integrand(psi: float, m1: float, m2: float) -> float:
    s2 = math.sin(psi) ** 2
    return 1.0 / math.sqrt((1.0 - m1 * s2) * (1.0 - m2 * s2))


def gj_invert_s(x: float, moduli: GJModuli) -> float:
    """u with s(u) = x, by quadrature of the defining integral.

    With t = sin(psi) the (1 - t^2) factor cancels against dt, leaving a
    smooth integrand on [0, arcsin x].
    """
    x = float(x)
    if not -1.0 < x < 1.0:
        raise DomainError("need |x| < 1")
    if moduli.m1 * x * x >= 1.0:
        raise DomainError("x beyond the first branch point 1/k1")
    with warnings.catch_warnings():
        # roundoff notices at this accuracy request are expected and harmless
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(_integrand, 0.0, math.asin(x), args=(moduli.m1, moduli.m2), epsabs=1e-14, epsrel=1e-13,
                      limit=200)
    return val


def gj_derivative_residuals(u: float, moduli: GJModuli, h: float = 1e-5) -> dict[str, float]:
    p, q, t = gj_eval(u + h, moduli), gj_eval(u - h, moduli), gj_eval(u, moduli)
    d = lambda f: (getattr(p, f) - getattr(q, f)) / (2.0 * h)
    m1, m2 = moduli.m1, moduli.m2
    return {
        "s": abs(d("s") - t.c * t.d1 * t.d2),
        "c": abs(d("c") + t.s * t.d1 * t.d2),
        "d1": abs(d("d1") + m1 * t.s * t.c * t.d2),
        "d2": abs(d("d2") + m2 * t.s * t.c * t.d1),
    }


def gj_addition(u: float, v: float, sign: int, moduli: GJModuli) -> GJQuad:
    """Addition formulae for s, c, d1, d2 at u +/- v.

    The shared denominator is sqrt(N_d2^2 + k2^2 N_s^2): the bracket under
    the root must be squared for d2^2 = 1 - k2^2 s^2 to hold.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a, b = gj_eval(u, moduli), gj_eval(v, moduli)
    m2 = moduli.m2
    kap2 = moduli.kappa_sq
    k2p2 = moduli.k2p_sq
    n_s = a.s * a.d2 * b.c * b.d1 + sign * b.s * b.d2 * a.c * a.d1
    n_c = a.c * a.d2 * b.c * b.d2 - sign * k2p2 * a.s * a.d1 * b.s * b.d1
    n_d1 = a.d1 * a.d2 * b.d1 * b.d2 - sign * kap2 * k2p2 * a.s * a.c * b.s * b.c
    n_d2 = a.d2 ** 2 * b.d2 ** 2 - kap2 * k2p2 ** 2 * a.s ** 2 * b.s ** 2
    dd = n_d2 * n_d2 + m2 * n_s * n_s
    if dd < 1e-28:
        raise DegeneracyError("addition-formula denominator vanishes")
    den = math.sqrt(dd)
    return GJQuad(u + sign * v, n_s / den, n_c / den, n_d1 / den, n_d2 / den, moduli)


def curve_residuals(u: float, moduli: GJModuli) -> dict[str, float]:
    """Point (x, y) = (s, s') on the genus-2 curve and its image (xy, x^2) on the elliptic curve."""
    t = gj_eval(u, moduli)
    m1, m2 = moduli.m1, moduli.m2
    x, y = t.s, t.c * t.d1 * t.d2
    w, z = x * y, x * x
    return {
        "C": abs(y * y - (1 - x * x) * (1 - m1 * x * x) * (1 - m2 * x * x)),
        "E": abs(w * w - z * (1 - z) * (1 - m1 * z) * (1 - m2 * z)),
    }
