"""Two-particle double-elliptic (DELL) model.

Two views are implemented:

* the Hamiltonian H(P, Q) = alpha(Q) cn(P w; k alpha / w), w^2 = k'^2 + k^2 alpha^2,
  equal to alpha(Q) c(P)/d2(P) with moduli (k, k sqrt(1 - alpha^2));
* the phase space of four quadrics in C^6 with x5 as Hamiltonian,
  integrated in closed form by generalized Jacobi functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..elliptic import amplitude_dk, jacobi, jacobi_param
from ..errors import ConstraintError, DomainError, SurfaceError
from ..gjelliptic import GJModuli, gj_eval

DUAL_TOL = 1e-10
SURFACE_TOL = 1e-6


@dataclass(frozen=True)
class DELLParams:
    """Coupling g, modulus k of the Hamiltonian and base modulus k_tilde of the quadrics.

    ``k_tilde`` defaults to ``k``.
    """

    g: float
    k: float
    k_tilde: float | None = None

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise DomainError("k must lie in (0, 1)")
        if self.k_tilde is None:
            object.__setattr__(self, "k_tilde", self.k)
        if not 0.0 < self.k_tilde < 1.0:
            raise DomainError("k_tilde must lie in (0, 1)")

    @property
    def printed_k2(self) -> complex:
        """k_tilde sqrt(-2 g^2), the second modulus as tabulated (imaginary for real g)."""
        return self.k_tilde * cmath.sqrt(-2.0 * self.g * self.g)


# ------------------------------------------------------------ alpha profiles


@dataclass(frozen=True)
class RationalProfile:
    """alpha^2 = 1 - 2 g^2 / Q^2 (real branch |Q| >= sqrt(2) g)."""

    g: float

    def alpha(self, Q: float) -> float:
        a2 = 1.0 - 2.0 * self.g ** 2 / (Q * Q)
        if a2 < 0.0:
            raise DomainError(f"alpha^2 = {a2:.3g} < 0 for |Q| < sqrt(2) g")
        return math.sqrt(a2)

    def dalpha(self, Q: float) -> float:
        a = self.alpha(Q)
        if a == 0.0:
            raise DomainError("alpha' is singular where alpha vanishes")
        return 2.0 * self.g ** 2 / (Q ** 3 * a)


@dataclass(frozen=True)
class EllipticProfile:
    """alpha = 1 + 2 g^2 sn^2(Q; k_tilde), whose derivative is 4 g^2 sn cn dn."""

    g: float
    k_tilde: float

    def alpha(self, Q: float) -> float:
        return 1.0 + 2.0 * self.g ** 2 * jacobi(Q, self.k_tilde).sn ** 2

    def dalpha(self, Q: float) -> float:
        t = jacobi(Q, self.k_tilde)
        return 4.0 * self.g ** 2 * t.sn * t.cn * t.dn


def profile(params: DELLParams, name: str = "rational"):
    if name == "rational":
        return RationalProfile(params.g)
    if name == "elliptic":
        return EllipticProfile(params.g, params.k_tilde)
    raise ValueError(f"unknown alpha profile {name!r}")


# ------------------------------------------------------------ Hamiltonian


def _moduli_for(alpha: float, k: float) -> GJModuli:
    return GJModuli.from_squares(k * k, k * k * (1.0 - alpha * alpha))


@dataclass(frozen=True)
class DualHamiltonian:
    cn_form: float
    gj_form: float

    @property
    def gap(self) -> float:
        return abs(self.cn_form - self.gj_form)


def hamiltonian_from_alpha(P: float, alpha: float, k: float) -> DualHamiltonian:
    w = math.sqrt(1.0 - k * k + k * k * alpha * alpha)
    cn_form = alpha * jacobi(P * w, k * alpha / w).cn
    q = gj_eval(P, _moduli_for(alpha, k))
    return DualHamiltonian(cn_form, alpha * q.c / q.d2)


def dell_hamiltonian(P: float, Q: float, params: DELLParams, prof=None, check: bool = True) -> DualHamiltonian:
    """Both forms of H(P, Q); with ``check`` their disagreement above 1e-10 raises."""
    prof = prof or RationalProfile(params.g)
    H = hamiltonian_from_alpha(P, prof.alpha(Q), params.k)
    if check and H.gap > DUAL_TOL * max(1.0, abs(H.cn_form)):
        raise ArithmeticError(f"Hamiltonian forms disagree by {H.gap:.3e}")
    return H


def dH_dalpha(P: float, alpha: float, k: float) -> float:
    """Partial of alpha cn(P w; k alpha / w) in alpha, through w and the modulus."""
    kp2 = 1.0 - k * k
    w = math.sqrt(kp2 + k * k * alpha * alpha)
    kap = k * alpha / w
    u = P * w
    t = jacobi(u, kap)
    dw = k * k * alpha / w
    dkap = k * kp2 / w ** 3
    dcn = -t.sn * t.dn * P * dw - t.sn * amplitude_dk(u, kap) * dkap
    return t.cn + alpha * dcn


def dell_hamilton_rhs(P: float, Q: float, params: DELLParams, prof=None) -> tuple[float, float]:
    """(P', Q') = (-dH/dQ, dH/dP).

    dH/dP = -k2'^2 alpha s d1 / d2^2 from the generalized-Jacobi derivative
    rules; dH/dQ = alpha'(Q) dH/dalpha, where dH/dalpha includes the
    alpha dependence of the modulus.
    """
    prof = prof or RationalProfile(params.g)
    a = prof.alpha(Q)
    mod = _moduli_for(a, params.k)
    q = gj_eval(P, mod)
    Qdot = -mod.k2p_sq * a * q.s * q.d1 / (q.d2 * q.d2)
    Pdot = -prof.dalpha(Q) * dH_dalpha(P, a, params.k)
    return Pdot, Qdot


def printed_hamilton_rhs(P: float, Q: float, params: DELLParams, prof=None) -> tuple[float, float]:
    """The Hamilton equations as displayed (alpha' c/d2 and alpha' k2'^2 s d1/d2^2)."""
    prof = prof or EllipticProfile(params.g, params.k_tilde)
    a, da = prof.alpha(Q), prof.dalpha(Q)
    mod = _moduli_for(a, params.k)
    q = gj_eval(P, mod)
    return -da * q.c / q.d2, -mod.k2p_sq * da * q.s * q.d1 / (q.d2 * q.d2)


def hamilton_fd_residual(P: float, Q: float, params: DELLParams, prof=None, h: float = 1e-6) -> float:
    prof = prof or RationalProfile(params.g)
    H = lambda p, qq: hamiltonian_from_alpha(p, prof.alpha(qq), params.k).cn_form
    dHdP = (H(P + h, Q) - H(P - h, Q)) / (2 * h)
    dHdQ = (H(P, Q + h) - H(P, Q - h)) / (2 * h)
    Pdot, Qdot = dell_hamilton_rhs(P, Q, params, prof)
    return max(abs(Pdot + dHdQ), abs(Qdot - dHdP))


# ------------------------------------------------------------ quadrics


def quadrics(x, params: DELLParams) -> np.ndarray:
    """Q1..Q4 as residuals (zero on the phase space)."""
    x1, x2, x3, x4, x5, x6 = x
    g2, kt = params.g ** 2, params.k_tilde
    return np.array([
        x1 * x1 - x2 * x2 - 1.0,
        x1 * x1 - x3 * x3 - kt * kt,
        -g2 * x1 * x1 + x4 * x4 + x5 * x5 - 1.0,
        -g2 * x1 * x1 + x4 * x4 + x6 * x6 / kt ** 2 - 1.0 / kt ** 2,
    ])


def quadric_gradients(x, params: DELLParams) -> np.ndarray:
    x1, x2, x3, x4, x5, x6 = x
    g2, kt = params.g ** 2, params.k_tilde
    z = 0.0 * x1
    return np.array([
        [2 * x1, -2 * x2, z, z, z, z],
        [2 * x1, z, -2 * x3, z, z, z],
        [-2 * g2 * x1, z, z, 2 * x4, 2 * x5, z],
        [-2 * g2 * x1, z, z, 2 * x4, z, 2 * x6 / kt ** 2],
    ])


def dell_quadric_rhs(x, params: DELLParams, check: bool = True) -> np.ndarray:
    """Flow generated by x5. The x4 component carries g^2 so that Q3, Q4 are conserved."""
    x = np.asarray(x, dtype=complex)
    if check:
        r = np.max(np.abs(quadrics(x, params)))
        if r > SURFACE_TOL:
            raise SurfaceError(f"state is off the quadric surface (residual {r:.3e})")
    x1, x2, x3, x4, _, x6 = x
    return np.array([x2 * x3 * x4 * x6, x1 * x3 * x4 * x6, x1 * x2 * x4 * x6,
                     params.g ** 2 * x1 * x2 * x3 * x6, 0.0, 0.0], dtype=complex)


def dell_flow(params: DELLParams):
    """rhs(t, x) for integrate(); skips the surface check, which intermediate stages would fail."""
    return lambda t, x: dell_quadric_rhs(x, params, check=False)


def pbs_bracket(x, i: int, j: int, params: DELLParams) -> complex:
    """{x_i, x_j} = eps_{i j k1..k4} dQ1_k1 dQ2_k2 dQ3_k3 dQ4_k4 (0-based indices)."""
    rows = np.zeros((6, 6), dtype=complex)
    rows[0, i] = 1.0
    rows[1, j] = 1.0
    rows[2:] = quadric_gradients(np.asarray(x, dtype=complex), params)
    return complex(np.linalg.det(rows))


def pbs_normalization(params: DELLParams) -> float:
    """Constant N with x_i' = N {x_i, x5}: the bracket carries 16 / k_tilde^2 and a sign."""
    return -params.k_tilde ** 2 / 16.0


def pbs_flow(x, params: DELLParams) -> np.ndarray:
    n = pbs_normalization(params)
    return np.array([n * pbs_bracket(x, i, 4, params) for i in range(6)])


@dataclass(frozen=True)
class DELLClosedForm:
    """x = (s, i c, i k_tilde d1, A4 d2)(omega (t - t0)), x5 = E, x6 = K."""

    params: DELLParams
    E: float
    K: float
    t0: float
    A: tuple[complex, complex, complex, complex]
    moduli: GJModuli
    omega: float

    def __call__(self, t: float) -> np.ndarray:
        q = gj_eval(self.omega * (t - self.t0), self.moduli)
        head = np.array(self.A) * np.array(q.as_tuple())
        return np.concatenate([head, [self.E, self.K]]).astype(complex)

    @property
    def euler4_coefficients(self) -> np.ndarray:
        from .euler import euler4_coefficients
        return euler4_coefficients(self.A, self.omega, None, None, self.moduli.m1, self.moduli.m2)


def energy_constant(E: float, params: DELLParams) -> float:
    """K from k_tilde^2 (1 - E^2) = 1 - K^2 (positive root)."""
    K2 = 1.0 - params.k_tilde ** 2 * (1.0 - E * E)
    if K2 <= 0.0:
        raise ConstraintError("no real K for this energy")
    return math.sqrt(K2)


def dell_closed_form(params: DELLParams, E: float, K: float | None = None, t0: float = 0.0) -> DELLClosedForm:
    """Closed-form trajectory with energy x5 = E, |E| < 1.

    Substitution into the quadrics fixes A1 = 1, A2 = i, A3 = i k_tilde,
    A4 = sqrt(1 - E^2), moduli k1^2 = 1/k_tilde^2 and k2^2 = g^2/(E^2 - 1),
    and the rate omega = -k_tilde K A4.
    """
    kt = params.k_tilde
    if K is None:
        K = energy_constant(E, params)
    if abs(kt * kt * (1.0 - E * E) - (1.0 - K * K)) > 1e-10:
        raise ConstraintError("energy relation k_tilde^2 (1 - E^2) = 1 - K^2 is violated")
    if not abs(E) < 1.0:
        raise DomainError("this real branch needs |E| < 1")
    A4 = math.sqrt(1.0 - E * E)
    moduli = GJModuli.from_squares(1.0 / (kt * kt), params.g ** 2 / (E * E - 1.0))
    A = (1.0 + 0j, 1j, 1j * kt, A4 + 0j)
    return DELLClosedForm(params, float(E), float(K), float(t0), A, moduli, -kt * K * A4)


def printed_amplitudes(params: DELLParams) -> tuple[complex, ...]:
    """A_i^2 as tabulated with k1 = 1/k_tilde, k2 = k_tilde sqrt(-2 g^2)."""
    k1 = 1.0 / params.k_tilde
    k2 = params.printed_k2
    r = cmath.sqrt(-params.g ** 2)
    return (k1 * k2 / r, -k1 * k2 / r, -k2 / (k1 * r), k1 * r / k2)
