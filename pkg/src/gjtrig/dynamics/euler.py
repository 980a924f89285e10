"""Euler tops in three and four dimensions.

3D: M' = {H2, H1, M} with H1 = sum M_i^2/(2 I_i), H2 = |M|^2/2, solved by
(A1 sn, A2 cn, A3 dn)(c t + v0). Putting M1 on sn forces a negative
parameter m when the motion circles the I3 axis; the positive modulus of
the classical form is mu = -m/(1 - m).

4D: M_i' = c_i prod_{j != i} M_j, solved by generalized Jacobi functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..elliptic import incomplete_F, jacobi_param
from ..errors import ConstraintError, DomainError, SeparatrixError
from ..gjelliptic import GJModuli, gj_eval
from .nambu import Poly

SEPARATRIX_TOL = 1e-10


# ------------------------------------------------------------------ 3D


@dataclass(frozen=True)
class Inertia3:
    I1: float
    I2: float
    I3: float

    def __post_init__(self):
        if not 0.0 < self.I1 < self.I2 < self.I3:
            raise DomainError("need 0 < I1 < I2 < I3")

    @property
    def inv(self) -> np.ndarray:
        return 1.0 / np.array([self.I1, self.I2, self.I3])


def euler3_energy(M, I: Inertia3) -> float:
    M = np.asarray(M, dtype=float)
    return 0.5 * float(np.sum(M * M * I.inv))


def euler3_casimir(M) -> float:
    M = np.asarray(M, dtype=float)
    return 0.5 * float(M @ M)


def euler3_hamiltonians(I: Inertia3) -> tuple[Poly, Poly]:
    return Poly.quadratic(I.inv), Poly.quadratic([1.0, 1.0, 1.0])


def euler3_rhs(M, I: Inertia3) -> np.ndarray:
    a1, a2, a3 = I.inv
    M1, M2, M3 = M
    return np.array([(a3 - a2) * M2 * M3, (a1 - a3) * M1 * M3, (a2 - a1) * M1 * M2])


def landau_modulus_sq(I: Inertia3, H1: float, H2: float) -> float:
    """(I2-I1)(2 H1 I3 - L)/((I3-I2)(L - 2 I1 H1)) with L = |M|^2 = 2 H2."""
    L = 2.0 * H2
    return (I.I2 - I.I1) * (2 * H1 * I.I3 - L) / ((I.I3 - I.I2) * (L - 2 * I.I1 * H1))


@dataclass(frozen=True)
class Euler3Solution:
    I: Inertia3
    A: tuple[float, float, float]
    m: float
    rate: float
    v0: float

    @property
    def mu(self) -> float:
        return -self.m / (1.0 - self.m)

    @property
    def t0(self) -> float:
        return -self.v0 / self.rate

    def __call__(self, t: float) -> np.ndarray:
        s, c, d = jacobi_param(self.rate * t + self.v0, self.m)
        return np.array([self.A[0] * s, self.A[1] * c, self.A[2] * d])

    def derivative(self, t: float) -> np.ndarray:
        s, c, d = jacobi_param(self.rate * t + self.v0, self.m)
        A1, A2, A3 = self.A
        r = self.rate
        return np.array([A1 * r * c * d, -A2 * r * s * d, -A3 * r * self.m * s * c])

    def ode_residual(self, t: float) -> float:
        return float(np.max(np.abs(self.derivative(t) - euler3_rhs(self(t), self.I))))


def printed_modulus_literal(I: Inertia3, H1: float, H2: float) -> float:
    """The displayed modulus expression with H2 = |M|^2 / 2 taken literally."""
    return (I.I2 - I.I1) / (I.I3 - I.I2) * (2 * H1 * I.I3 - H2) / (H2 - 2 * I.I1 * H1)


def euler3_closed_form(I: Inertia3, M0, modulus: str = "invariants") -> Euler3Solution:
    """Amplitudes, parameter and rate from the two invariants; phase from M0.

    ``modulus="printed"`` takes the parameter from the displayed modulus
    expression instead, read as k^2 with |M|^2 in place of H2, and mapped
    to m = -k^2/(1 - k^2); the ODE residual then tests that reading.
    Requires |M|^2 > 2 H1 I2 (motion around the I3 axis).
    """
    M0 = np.asarray(M0, dtype=float)
    a1, a2, a3 = I.inv
    e = float(np.sum(M0 * M0 * I.inv))  # 2 H1
    L = float(M0 @ M0)  # 2 H2
    if L <= 0.0:
        raise DomainError("zero angular momentum")
    gap = L - e * I.I2
    if abs(gap) <= SEPARATRIX_TOL * max(1.0, L):
        raise SeparatrixError("initial condition lies on the separatrix")
    if gap < 0.0:
        raise DomainError("motion circles the I1 axis; this form needs |M|^2 > 2 H1 I2")
    A2sq = (e - L * a3) / (a2 - a3)
    A3sq = L - A2sq
    A1sq = (e - L * a3) / (a1 - a3)
    if min(A1sq, A2sq, A3sq) <= 0.0:
        raise DomainError("initial condition is a steady rotation")
    m = (A1sq - A2sq) / A3sq
    if modulus == "printed":
        ksq = landau_modulus_sq(I, 0.5 * e, 0.5 * L)
        m = -ksq / (1.0 - ksq)
    elif modulus != "invariants":
        raise ValueError("modulus must be 'invariants' or 'printed'")
    A2 = math.sqrt(A2sq)
    A3 = math.copysign(math.sqrt(A3sq), M0[2])
    A1 = -math.copysign(math.sqrt(A1sq), A3)  # makes the rate positive
    rate = -(a1 - a3) * A1 * A3 / A2
    # sn(v;m) = sd(w;mu)/r, cn(v;m) = cd(w;mu), w = r v
    mu = -m / (1.0 - m)
    r = math.sqrt(1.0 - m)
    phi = math.atan2(r * M0[0] / A1, M0[1] / A2)
    v0 = incomplete_F(phi, math.sqrt(mu)) / r
    return Euler3Solution(I, (A1, A2, A3), m, rate, v0)


def tabulated_amplitudes(I: Inertia3, K: float, k: float) -> tuple[float, float, float]:
    """A_i^2 exactly as tabulated next to the 3D solution (A1^2 is never positive)."""
    I1, I2, I3 = I.I1, I.I2, I.I3
    kk = K * K * k * k
    return (-kk * I1 * I1 * I2 * I3 / ((I2 - I1) * (I3 - I1)),
            kk * I1 * I2 * I2 * I3 / ((I2 - I1) * (I3 - I2)),
            kk * I1 * I2 * I3 * I3 / ((I3 - I1) * (I3 - I2)))


# ------------------------------------------------------------------ 4D


def euler4_combinations(alpha, beta) -> np.ndarray:
    """The four antisymmetric coefficient combinations of the 4D system."""
    a = [None, *alpha]
    b = [None, *beta]
    m = lambda i, j: a[i] * b[j] - a[j] * b[i]
    return np.array([
        m(2, 3) + m(3, 4) + m(4, 2),
        m(1, 4) + m(3, 1) + m(4, 3),
        m(1, 2) + m(2, 4) + m(4, 1),
        m(1, 3) + m(2, 1) + m(3, 2),
    ])


@dataclass(frozen=True)
class Nambu4Params:
    alpha: tuple[float, float, float, float]
    beta: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.alpha) != 4 or len(self.beta) != 4:
            raise ValueError("alpha and beta need four entries")

    @cached_property
    def coefficients(self) -> np.ndarray:
        return euler4_combinations(self.alpha, self.beta)

    def hamiltonians(self) -> tuple[Poly, Poly, Poly]:
        return (Poly.quadratic([1.0] * 4), Poly.quadratic(self.alpha), Poly.quadratic(self.beta))

    def invariants(self) -> dict[str, callable]:
        al, be = np.array(self.alpha), np.array(self.beta)
        return {
            "H1": lambda M: 0.5 * float(np.sum(np.abs(M) ** 2)),
            "H2": lambda M: 0.5 * float(np.sum(al * np.abs(M) ** 2)),
            "H3": lambda M: 0.5 * float(np.sum(be * np.abs(M) ** 2)),
        }


def euler4_rhs_coeffs(M, c) -> np.ndarray:
    M1, M2, M3, M4 = M
    return np.array([c[0] * M2 * M3 * M4, c[1] * M1 * M3 * M4, c[2] * M1 * M2 * M4, c[3] * M1 * M2 * M3])


def euler4_rhs(M, params: Nambu4Params) -> np.ndarray:
    return euler4_rhs_coeffs(M, params.coefficients)


def euler4_coefficients(A, K, k1, k2, m1=None, m2=None) -> np.ndarray:
    """(c1..c4) for which (A1 s, A2 c, A3 d1, A4 d2)(K(t - t0)) solves the system.

    ``m1``, ``m2`` override k1^2, k2^2 (extended or complex moduli).
    """
    A1, A2, A3, A4 = A
    if any(a == 0 for a in A) or K == 0:
        raise ZeroDivisionError("amplitudes and rate must be non-zero")
    m1 = k1 * k1 if m1 is None else m1
    m2 = k2 * k2 if m2 is None else m2
    return np.array([
        A1 * K / (A2 * A3 * A4),
        -A2 * K / (A1 * A3 * A4),
        -m1 * A3 * K / (A1 * A2 * A4),
        -m2 * A4 * K / (A1 * A2 * A3),
    ])


def conserving_A1(A2: float, A3: float, A4: float, k1: float, k2: float) -> float:
    """A1 with A1^2 = A2^2 + k1^2 A3^2 + k2^2 A4^2, i.e. sum c_i = 0 so |M|^2 is conserved."""
    return math.sqrt(A2 * A2 + k1 * k1 * A3 * A3 + k2 * k2 * A4 * A4)


@dataclass(frozen=True)
class Euler4Solution:
    A: tuple[float, float, float, float]
    K: float
    moduli: GJModuli
    t0: float = 0.0

    @property
    def coefficients(self) -> np.ndarray:
        return euler4_coefficients(self.A, self.K, None, None, self.moduli.m1, self.moduli.m2)

    def __call__(self, t: float) -> np.ndarray:
        q = gj_eval(self.K * (t - self.t0), self.moduli)
        return np.array(self.A) * np.array(q.as_tuple())

    def ode_residual(self, t: float) -> float:
        """Pointwise |M' - rhs(M)| with M' from the generalized-Jacobi derivative rules."""
        q = gj_eval(self.K * (t - self.t0), self.moduli)
        s, c, d1, d2 = q.as_tuple()
        m1, m2 = self.moduli.m1, self.moduli.m2
        A1, A2, A3, A4 = self.A
        K = self.K
        dM = np.array([A1 * K * c * d1 * d2, -A2 * K * s * d1 * d2, -A3 * K * m1 * s * c * d2, -A4 * K * m2 * s * c * d1])
        return float(np.max(np.abs(dM - euler4_rhs_coeffs(self(t), self.coefficients))))


def euler4_closed_form(A, K: float, k1: float, k2: float, t0: float = 0.0) -> Euler4Solution:
    return Euler4Solution(tuple(float(a) for a in A), float(K), GJModuli.of(k1, k2), float(t0))


def fit_alpha_beta(c, seed: int = 0) -> Nambu4Params:
    """Some (alpha, beta) whose combinations reproduce c (requires sum c = 0).

    The combinations are bilinear, antisymmetric, and orthogonal to
    (1,1,1,1), alpha and beta. alpha is drawn orthogonal to c and to the
    ones vector; beta then solves a linear least-squares problem.
    """
    c = np.asarray(c, dtype=float)
    if abs(c.sum()) > 1e-10 * max(1.0, np.max(np.abs(c))):
        raise ConstraintError("coefficients must sum to zero for |M|^2 to be a Hamiltonian")
    rng = np.random.default_rng(seed)
    basis = np.array([np.ones(4), c]).T
    q, _ = np.linalg.qr(basis)
    alpha = rng.normal(size=4)
    alpha -= q @ (q.T @ alpha)
    # combinations are linear in beta for fixed alpha
    cols = [euler4_combinations(alpha, e) for e in np.eye(4)]
    beta, *_ = np.linalg.lstsq(np.array(cols).T, c, rcond=None)
    params = Nambu4Params(tuple(alpha), tuple(beta))
    if np.max(np.abs(params.coefficients - c)) > 1e-9 * max(1.0, np.max(np.abs(c))):
        raise ConstraintError("alpha/beta fit failed")
    return params
