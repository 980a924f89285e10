"""Randomized verification suites shared by the CLI and the acceptance tests.

Each suite draws its trials from per-trial seeds (splitmix64 of the master
seed and the trial index), evaluates a set of residuals per trial and keeps
the maximum of each. Asserted residuals carry a tolerance; diagnostics are
reported without one. Reductions are maxima, so the report does not depend
on how trials are split across workers.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import elliptic as ell
from .dynamics import dell, euler, nambu
from .dynamics.integrate import integrate
from .errors import GJTrigError, IndeterminateRatioError, TangentError
from .gjelliptic import GJModuli, curve_residuals, gj_addition, gj_derivative_residuals, gj_eval, gj_invert_s
from .multivec import (
    cross_nd,
    det,
    five_vector_identity_residual,
    input_scale,
    nested_identity_residual,
    plucker_residual,
)
from .rng import thread_cap, trial_seed
from .simplex_trig import mdim, spherical as sph, tetra
from .simplex_trig.sampling import sample_unit_vectors
from . import uniformize as uni

SCHEMA = 1
PARALLEL_MIN_TRIALS = 200


# ------------------------------------------------------------------ report


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    tol_scale: float
    residuals: dict[str, float]
    tolerances: dict[str, float]
    diagnostics: dict[str, float] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def failures(self) -> list[str]:
        return [k for k, tol in self.tolerances.items() if not self.residuals.get(k, math.inf) <= tol]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "seed_rule": "splitmix64(seed + index * 0x9E3779B97F4A7C15)",
            "tol_scale": self.tol_scale,
            "passed": self.passed,
            "checks": {k: {"max_residual": _num(self.residuals.get(k, math.inf)), "tolerance": tol,
                           "passed": k not in self.failures}
                       for k, tol in sorted(self.tolerances.items())},
            "diagnostics": {k: _num(v) for k, v in sorted(self.diagnostics.items())},
            "counts": dict(sorted(self.counts.items())),
        }
        if timing and self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d


def _num(x: float):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf"
    return x


def report_json(reports: list[SuiteReport], timing: bool = False) -> str:
    body = {
        "schema": SCHEMA,
        "passed": all(r.passed for r in reports),
        "suites": [r.to_dict(timing) for r in reports],
    }
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


# ------------------------------------------------------------------ runner


class _Acc:
    """Per-trial accumulator: max of residuals, max of diagnostics, counters."""

    def __init__(self):
        self.res: dict[str, float] = {}
        self.diag: dict[str, float] = {}
        self.cnt: dict[str, int] = {}

    def r(self, name: str, value):
        v = float(value)
        if math.isnan(v):
            v = math.inf
        if v > self.res.get(name, -1.0):
            self.res[name] = v

    def d(self, name: str, value):
        v = float(value)
        if math.isnan(v):
            v = math.inf
        if v > self.diag.get(name, -math.inf):
            self.diag[name] = v

    def c(self, name: str, n: int = 1):
        self.cnt[name] = self.cnt.get(name, 0) + n

    def merge(self, other: "_Acc"):
        for k, v in other.res.items():
            self.r(k, v)
        for k, v in other.diag.items():
            self.d(k, v)
        for k, v in other.cnt.items():
            self.c(k, v)


def _run_chunk(args) -> _Acc:
    fn_name, seeds = args
    fn = TRIALS[fn_name]
    acc = _Acc()
    for s in seeds:
        fn(s, acc)
    return acc


def run_trials(fn_name: str, trials: int, seed: int, workers: int | None = None) -> _Acc:
    seeds = [trial_seed(seed, i) for i in range(trials)]
    workers = thread_cap() if workers is None else workers
    total = _Acc()
    if workers <= 1 or trials < PARALLEL_MIN_TRIALS:
        total.merge(_run_chunk((fn_name, seeds)))
        return total
    n_chunks = min(len(seeds), 4 * workers)
    chunks = [seeds[i::n_chunks] for i in range(n_chunks)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for acc in ex.map(_run_chunk, [(fn_name, c) for c in chunks]):
            total.merge(acc)
    return total


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


# ------------------------------------------------------------------ 1: vector products


def _trial_multivec(seed: int, acc: _Acc):
    rng = _rng(seed)
    for n in (3, 4, 5):
        vs = rng.normal(size=(2 * n - 1, n + 1))
        acc.r("nested", nested_identity_residual(vs) / max(1.0, input_scale(vs)))
        ps = rng.normal(size=(2 * n - 2, n - 1))
        acc.r("plucker", plucker_residual(ps) / max(1.0, input_scale(ps)))
    fv = rng.normal(size=(5, 4))
    acc.r("five_vector", five_vector_identity_residual(*fv) / max(1.0, input_scale(fv)))
    acc.c("draws_per_n")


# ------------------------------------------------------------------ 2: spherical


def _excess_oracle(n: np.ndarray) -> float:
    """Van Oosterom-Strackee: tan(E/2) = |det| / (1 + a.b + b.c + c.a)."""
    a, b, c = n
    num = abs(det(n))
    den = 1.0 + a @ b + b @ c + c @ a
    return 2.0 * math.atan2(num, den)


def _trial_spherical(seed: int, acc: _Acc):
    n = sample_unit_vectors(3, _rng(seed))
    tri = sph.SphericalTriangle.from_vectors(n)
    al = tri.alphas
    va = tri.vector_alphas()
    acc.r("cosine_rule_vs_vectors", max(abs(x - y) for x, y in zip(al, va)))
    acc.r("gsin_vs_det", abs(tri.gsin - abs(det(n))))
    k = tri.k
    acc.r("sine_rule", float(np.max(np.abs(tri.sine_ratios() - k))))
    a_i, a_j, a_k = al
    t_ij, t_ik, t_jk = tri.thetas
    acc.r("polar_cosine_rule", max(
        abs(sph.spherical_polar_cosine_rule(a_i, a_j, a_k) - t_jk),
        abs(sph.spherical_polar_cosine_rule(a_j, a_i, a_k) - t_ik),
        abs(sph.spherical_polar_cosine_rule(a_k, a_i, a_j) - t_ij)))
    acc.r("sine_constant_from_angles", abs(sph.sine_constant_from_angles(*va) / k - 1.0))
    acc.r("excess", abs(tri.area() - _excess_oracle(n)))
    acc.r("four_parts", sph.four_parts_residual(tri))
    acc.r("five_parts", sph.five_parts_residual(tri, "cos"))
    acc.d("five_parts_cot_variant", sph.five_parts_residual(tri, "cot"))
    acc.c("triangles")


# ------------------------------------------------------------------ 3: hyperspherical

GSIN6_FLOOR = 1e-3
POLAR_MIN_DEN = 1e-6
LABELINGS = [(0, 1, 2, 3), (2, 0, 3, 1), (3, 1, 0, 2), (1, 3, 2, 0)]


def _tetra_sample(rng) -> tetra.HypersphericalTetrahedron:
    while True:
        tet = tetra.HypersphericalTetrahedron.from_vectors(sample_unit_vectors(4, rng))
        if tet.gsin6 > GSIN6_FLOOR:
            return tet


def _trial_hyperspherical(seed: int, acc: _Acc):
    tet = _tetra_sample(_rng(seed))
    t = tet.theta
    for a, b in tetra.EDGES:
        acc.r("dihedral_vs_vectors", abs(math.cos(tet.phi[a, b]) - tet.vector_cos_phi(a, b)))
        acc.r("sin_phi", abs(math.sin(tet.phi[a, b]) - tetra.hyp_sin_phi(t, (a, b))))
    acc.r("gsin6_vs_det", abs(tet.gsin6 - abs(det(tet.vectors))))
    r = tetra.sine_rule_ratios(t)
    acc.r("sine_rule", float(np.max(np.abs(r - tet.k_H))))
    acc.r("product_sine", float(np.ptp(tetra.product_sine_ratios(t))))
    acc.r("vertex_sine", float(np.ptp(tetra.vertex_sine_ratios(t, 1))))
    acc.r("desnanot_jacobi", tetra.gram_desnanot_residual(t))
    try:
        acc.r("cosine_ratios", float(np.ptp(tetra.cosine_ratios(t, min_den=POLAR_MIN_DEN))))
    except IndeterminateRatioError:
        acc.c("cosine_ratios_skipped")
    for lab in LABELINGS:
        i, j, k, l = lab
        cleared, den = tetra.hyp_polar_cleared_residual(tet, lab)
        acc.r("polar_cosine_cleared", cleared)
        if den > POLAR_MIN_DEN:
            acc.d("polar_cosine_quotient", abs(tetra.hyp_polar_cosine_rule(tet.phi, lab) - math.cos(t[k, l])))
        acc.r("vertex_cosine", abs(tetra.vertex_cosine_rule(tet.alpha(j, i, k), tet.alpha(j, k, l), tet.alpha(j, i, l))
                                   - math.cos(tet.phi[j, k])))
        acc.r("vertex_polar_cosine", abs(tetra.vertex_polar_cosine(tet.phi[j, k], tet.phi[i, j], tet.phi[j, l])
                                         - math.cos(tet.alpha(j, i, l))))
        acc.r("face_vertex_mixed", tetra.prop11_residual(t, lab))
        acc.r("four_parts", tetra.hyp_four_parts_residual(tet, lab))
        acc.r("five_parts", tetra.hyp_five_parts_residual(tet, lab, "projection"))
        acc.d("five_parts_printed_variant", tetra.hyp_five_parts_residual(tet, lab, "printed"))
        acc.d("vertex_polar_plus_variant", abs(tetra.vertex_polar_cosine(tet.phi[j, k], tet.phi[i, j], tet.phi[j, l], +1)
                                               - math.cos(tet.alpha(j, i, l))))
    acc.c("tetrahedra")


# ------------------------------------------------------------------ 4: m-dimensional


def _trial_mdim(seed: int, acc: _Acc):
    rng = _rng(seed)
    n6 = sample_unit_vectors(6, rng)
    c6 = mdim.SimplexConfig.from_vectors(n6)
    u1, u2 = cross_nd(n6[:5]), cross_nd(n6[1:])
    acc.r("cosine_rule_m6", abs(mdim.mdim_cosine_rule(c6) + (u1 @ u2) / (np.linalg.norm(u1) * np.linalg.norm(u2))))
    n5 = sample_unit_vectors(5, rng)
    c5 = mdim.SimplexConfig.from_vectors(n5)
    acc.r("facet_normal_gram_m5", float(np.max(np.abs(mdim.window_gram(c5) - mdim.window_gram_from_vectors(n5)))))
    kc = mdim.mdim_sine_constant(c5)
    acc.r("sine_constant_m5", float(np.max(np.abs(mdim.facet_normal_product_ratios(n5) - kc))) / max(1.0, kc))
    acc.r("polar_cosine_m5", mdim.mdim_polar_cosine_residual(c5))
    for j in range(2, 5):
        acc.r("hierarchy_step_m5", mdim.facet_hierarchy_residual(c5, j))
        acc.r("hierarchy_chain_m5", mdim.facet_hierarchy_residual(c5, j, 1))
    acc.c("samples")


# ------------------------------------------------------------------ 5: elliptic

ELL_KS = [round(0.1 * i, 1) for i in range(1, 10)]
ELL_GRID = 100


def _quad_F(phi: float, k: float) -> float:
    f = lambda x: 1.0 / math.sqrt(1.0 - (k * math.sin(x)) ** 2)
    val, _ = quad(f, 0.0, phi, epsabs=1e-14, epsrel=1e-14, limit=400)
    return val


def elliptic_grid(acc: _Acc):
    """Descending Landen against direct quadrature on fixed 100-point grids."""
    with warnings.catch_warnings():
        # quad flags roundoff when asked for 1e-14; its estimate is still far below the tolerance
        warnings.simplefilter("ignore", IntegrationWarning)
        _elliptic_grid(acc)


def _elliptic_grid(acc: _Acc):
    for k in ELL_KS:
        K = ell.complete_K(k)
        Kq, _ = quad(lambda x: 1.0 / math.sqrt(1.0 - (k * math.sin(x)) ** 2), 0.0, math.pi / 2, epsabs=1e-15, epsrel=1e-15)
        acc.r("K_vs_quadrature", abs(K - Kq))
        for u in np.linspace(-2.0 * K, 4.0 * K, ELL_GRID):
            t = ell.jacobi(u, k)
            acc.r("landen_vs_quadrature", abs(_quad_F(t.am, k) - u))
            acc.r("sn_vs_inversion", abs(t.sn - ell.sn_by_inversion(u, k)))
            acc.r("pythagorean", max(t.pythagorean_residuals()))
        acc.c("grid_points", ELL_GRID)


def _trial_elliptic(seed: int, acc: _Acc):
    rng = _rng(seed)
    k = rng.uniform(0.05, 0.95)
    K = ell.complete_K(k)
    a_j, a_k = rng.uniform(-3 * K, 3 * K, size=2)
    acc.r("addition", max(ell.spherical_addition_residuals(a_j, a_k, k).values()))
    a1, a2 = (0.1 + 0.8 * rng.dirichlet([1, 1, 1]))[:2] * 2 * K
    rho = rng.uniform(0.5, 2.0)
    acc.r("yang_baxter", ell.yang_baxter_residual(a1, a2, rho, k, "signed"))
    acc.d("yang_baxter_all_plus_variant", ell.yang_baxter_residual(a1, a2, rho, k, "printed"))
    u = rng.uniform(-4 * K, 4 * K)
    acc.r("derivatives_fd", max(ell.derivative_residuals(u, k)))
    acc.c("draws")


# ------------------------------------------------------------------ 6: generalized Jacobi


def _gj_moduli(rng) -> GJModuli:
    k1 = rng.uniform(0.05, 0.95)
    k2 = rng.uniform(0.0, k1)
    return GJModuli.of(k1, k2)


def gj_quarter_period(moduli: GJModuli) -> float:
    return ell.complete_K(moduli.kappa) / math.sqrt(moduli.k2p_sq)


def _trial_gj(seed: int, acc: _Acc):
    rng = _rng(seed)
    mo = _gj_moduli(rng)
    Kq = gj_quarter_period(mo)
    u, v = rng.uniform(-3 * Kq, 3 * Kq, size=2)
    q = gj_eval(u, mo)
    acc.r("identities", max(q.identity_residuals().values()))
    acc.r("derivatives_fd", max(gj_derivative_residuals(u, mo).values()))
    cr = curve_residuals(u, mo)
    acc.r("curve", cr["C"])
    acc.r("curve_image", cr["E"])
    for sign in (1, -1):
        a = gj_addition(u, v, sign, mo)
        b = gj_eval(u + sign * v, mo)
        acc.r("addition", max(abs(x - y) for x, y in zip(a.as_tuple(), b.as_tuple())))
    w = rng.uniform(-0.9, 0.9) * Kq
    acc.r("reduction_vs_inversion", abs(gj_invert_s(gj_eval(w, mo).s, mo) - w))
    acc.c("draws")


# ------------------------------------------------------------------ 7: uniformization


# below this at the largest step the h^2 coefficient is too close to zero to read an order
DIFF_FLOOR = 1e-8


def _richardson_order_gap(r) -> float | None:
    """|observed order - 2| for residuals at steps h, h/2, h/4.

    With r(h) = c2 h^2 + c3 h^3 + ..., 8 r(h/2) - r(h) cancels the cubic term.
    """
    e1, e2 = 8 * r[1] - r[0], 8 * r[2] - r[1]
    if e1 <= 0 or e2 <= 0:
        return None
    return abs(math.log2(e1 / e2) - 2.0)


def _trial_uni_spherical(seed: int, acc: _Acc):
    rng = _rng(seed)
    mu = rng.uniform(0.05, 0.95)
    K = ell.complete_K(mu)
    b = (0.05 + 0.85 * rng.dirichlet([1, 1, 1])) * 2 * K
    u = uni.triangle_from_b(b[0], b[1], mu)
    for name, val in u.residuals().items():
        acc.r(f"b_{name}", val)
    rb = u.real_branch_residuals()
    acc.r("b_real_branch", max(rb["cn"], rb["dn"]))
    acc.d("b_swapped_pair_variant", min(rb["cn_swapped"], rb["dn_swapped"]))
    # a-parameterization: sine constant above 1 and every side below pi/2
    while True:
        tri = sph.SphericalTriangle.from_vectors(sample_unit_vectors(3, rng))
        if tri.k > 1.05 and max(tri.thetas) < 0.5 * math.pi:
            break
        acc.c("a_rejected_draws")
    ar = uni.verify_a_parameterization(tri)
    acc.r("a_dictionary", max(ar["sn"], ar["cn"], ar["dn"], ar["sum"]))
    acc.r("a_real_branch", max(ar["cn_add"], ar["dn_add"]))
    acc.d("a_swapped_pair_variant", min(ar["cn_add_swapped"], ar["dn_add_swapped"]))
    acc.r("W_derivative", uni.spherical_W_derivative_residual(tri))
    try:
        r = [uni.spherical_differential_residual(tri, h) for h in (1e-3, 5e-4, 2.5e-4)]
    except TangentError:
        acc.c("differential_skipped_no_tangent")
    else:
        acc.d("differential_at_1e-3", r[0])
        # r(h) = c2 h^2 + c3 h^3 + ...; 8 r(h/2) - r(h) drops the cubic term
        gap = _richardson_order_gap(r)
        if r[0] > DIFF_FLOOR and gap is not None:
            acc.r("differential_order_gap", gap)
            acc.d("differential_raw_order_gap", abs(math.log2(r[1] / r[2]) - 2.0))
        else:
            acc.c("differential_skipped_small_leading_term")
    acc.c("triangles")


def _equifacial_sample(rng) -> tetra.HypersphericalTetrahedron:
    while True:
        t = rng.uniform(0.3, 1.7, size=3)
        try:
            tet = tetra.equifacial_tetrahedron(*t)
        except GJTrigError:
            continue
        if tet.gsin6 > GSIN6_FLOOR:
            return tet


def _trial_uni_symtet(seed: int, acc: _Acc):
    tet = _equifacial_sample(_rng(seed))
    rep = uni.symmetric_tet_residuals(tet)
    acc.r("reduced_sine_rule", rep.redsin)
    acc.r("opposite_dihedral_gap", rep.asymmetry)
    acc.r("hyp_W_derivative", max(uni.hyp_W_derivative_residual(tet, e) for e in tetra.EDGES))
    r = [rep.differential[h] for h in sorted(rep.differential, reverse=True)]
    if len(r) < 3:
        acc.c("differential_skipped_singular_weight")
    elif (gap := _richardson_order_gap(r)) is not None and r[0] > DIFF_FLOOR:
        acc.r("differential_order_gap", gap)
        acc.d("differential_raw_order_gap", max(abs(math.log2(q) - 2.0) for q in rep.order_ratios))
        acc.c("differentials")
    else:
        acc.c("differential_skipped_small_leading_term")
    acc.c("tetrahedra")


def _trial_uni_gjid(seed: int, acc: _Acc):
    rng = _rng(seed)
    while True:
        rep = uni.gj_identification_report(_equifacial_sample(rng))
        if rep.sine_residual is not None:
            break
    acc.r("face_constant_spread", rep.face_spread)
    acc.r("vertex_constant_spread", rep.vertex_spread)
    acc.r("gj_sine_dictionary", rep.sine_residual)
    if rep.cosine_residual is not None:
        acc.r("gj_cosine_dictionary", rep.cosine_residual)
    acc.c("cosine_edge_pairs_checked", rep.cosine_edges_checked)
    u = rng.uniform(0.05, 1.5)
    _, res = uni.gj_angles_from_u(u, rng.uniform(0.3, 0.9), rng.uniform(0.0, 0.9))
    acc.r("gj_angles_from_u", max(res.values()))
    acc.c("tetrahedra")


# ------------------------------------------------------------------ 8: dynamics

TOP3_EXAMPLE = (euler.Inertia3(1.0, 2.0, 3.0), (0.0, 1.0, 1.0))


def _top3_check(I: euler.Inertia3, M0, t1: float, acc: _Acc, tag: str):
    sol = euler.euler3_closed_form(I, M0, modulus="printed")
    ts = np.linspace(0.0, t1, 101)
    tr = integrate(lambda t, y: euler.euler3_rhs(y, I), np.array(M0, float), (0.0, t1), 1e-10, t_eval=ts,
                   invariants={"H1": lambda M: euler.euler3_energy(M, I), "H2": euler.euler3_casimir})
    acc.r("top3_closed_vs_integrator", max(float(np.max(np.abs(sol(t) - y))) for t, y in zip(ts, tr.states)))
    acc.r("top3_drift", max(tr.drift("H1"), tr.drift("H2")))
    acc.r("top3_printed_modulus_ode", max(sol.ode_residual(t) for t in ts))
    H1p, H2p = euler.euler3_hamiltonians(I)
    acc.r("top3_closed_form_invariants", max(float(np.ptp([euler.euler3_energy(sol(t), I) for t in ts])),
                                             float(np.ptp([euler.euler3_casimir(sol(t)) for t in ts]))))
    x = ts[17]
    y = sol(x)
    br = np.array([nambu.nambu3_bracket(H2p, H1p, nambu.Poly.var(3, i), y) for i in range(3)])
    acc.r("top3_bracket_vs_rhs", float(np.max(np.abs(br - euler.euler3_rhs(y, I)))))
    acc.c(tag)


def _top4_check(rng, acc: _Acc):
    A2, A3, A4 = rng.uniform(0.5, 1.5, size=3)
    k1 = rng.uniform(0.2, 0.9)
    k2 = rng.uniform(0.0, k1)
    K = rng.uniform(0.5, 1.5)
    A1 = euler.conserving_A1(A2, A3, A4, k1, k2)
    sol = euler.euler4_closed_form((A1, A2, A3, A4), K, k1, k2, t0=rng.uniform(-1, 1))
    params = euler.fit_alpha_beta(sol.coefficients, seed=int(rng.integers(2 ** 31)))
    ts = np.linspace(0.0, 5.0, 51)
    tr = integrate(lambda t, y: euler.euler4_rhs(y, params), sol(0.0), (0.0, 5.0), 1e-10, t_eval=ts,
                   invariants=params.invariants())
    acc.r("top4_closed_vs_integrator", max(float(np.max(np.abs(sol(t) - y))) for t, y in zip(ts, tr.states)))
    acc.r("top4_drift", max(tr.drift(n) for n in tr.ledger))
    acc.r("top4_closed_form_ode", max(sol.ode_residual(t) for t in ts))
    inv = params.invariants()
    acc.r("top4_closed_form_invariants", max(float(np.ptp([f(sol(t)) for t in ts])) for f in inv.values()))
    Hs = params.hamiltonians()
    y = sol(1.3)
    br = np.array([nambu.nambu4_bracket(nambu.Poly.var(4, i), *Hs, y) for i in range(4)])
    acc.r("top4_bracket_vs_rhs", float(np.max(np.abs(br - euler.euler4_rhs(y, params)))))


def _axiom_checks(rng, acc: _Acc, with_fi4: bool):
    for n in (3, 4):
        polys = [nambu.Poly.random(n, 2, rng) for _ in range(n + 1)]
        x = rng.normal(size=n)
        sk = nambu.skew_residual(polys[:n], x)
        acc.r("takhtajan_skew", sk / max(1.0, abs(nambu._bracket(polys[:n], x))))
        r, s = nambu.leibniz_residual(polys[0], polys[1], polys[2:n + 1], x)
        acc.r("takhtajan_leibniz", r / s)
    f = [nambu.Poly.random(3, 2, rng) for _ in range(2)]
    g = [nambu.Poly.random(3, 2, rng) for _ in range(3)]
    r, s = nambu.fundamental_identity_residual(f, g, rng.normal(size=3))
    acc.r("takhtajan_fundamental", r / s)
    if with_fi4:
        f = [nambu.Poly.random(4, 2, rng) for _ in range(3)]
        g = [nambu.Poly.random(4, 2, rng) for _ in range(4)]
        r, s = nambu.fundamental_identity_residual(f, g, rng.normal(size=4))
        acc.r("takhtajan_fundamental", r / s)
        acc.c("fundamental_identity_order4")


def _dell_check(rng, acc: _Acc):
    g = rng.uniform(0.05, 0.6)
    k = rng.uniform(0.3, 0.9)
    params = dell.DELLParams(g, k)
    for _ in range(5):
        P = rng.uniform(-3, 3)
        Q = math.copysign(rng.uniform(math.sqrt(2) * g * 1.2, 3.0), rng.normal())
        H = dell.dell_hamiltonian(P, Q, params, check=False)
        acc.r("dell_dual_hamiltonian", H.gap)
        acc.r("dell_hamilton_fd", dell.hamilton_fd_residual(P, Q, params))
        acc.r("dell_hamilton_fd", dell.hamilton_fd_residual(P, Q, params, dell.EllipticProfile(g, k)))
    for name in ("rational", "elliptic"):
        prof = dell.profile(params, name)
        y0 = np.array([rng.uniform(-1, 1), rng.uniform(1.2, 2.0) * max(1.0, 2 * g)])
        f = lambda t, y: np.array(dell.dell_hamilton_rhs(y[0], y[1], params, prof))
        tr = integrate(f, y0, (0.0, 2.0), 1e-10,
                       invariants={"H": lambda y: dell.dell_hamiltonian(y[0], y[1], params, prof, check=False).cn_form})
        acc.r("dell_energy_drift", tr.drift("H"))
    E = rng.uniform(-0.9, 0.9)
    cf = dell.dell_closed_form(params, E, t0=rng.uniform(-0.5, 0.5))
    ts = np.linspace(0.0, 3.0, 61)
    tr = integrate(dell.dell_flow(params), cf(0.0), (0.0, 3.0), 1e-10, t_eval=ts,
                   invariants={f"Q{i + 1}": (lambda y, i=i: dell.quadrics(y, params)[i]) for i in range(4)})
    acc.r("dell_closed_vs_flow", max(float(np.max(np.abs(cf(t) - y))) for t, y in zip(ts, tr.states)))
    acc.r("dell_casimir_drift", max(float(np.max(np.abs(v - v[0]))) for v in tr.ledger.values()))
    acc.r("dell_closed_form_quadrics", max(float(np.max(np.abs(dell.quadrics(cf(t), params)))) for t in ts))
    x = cf(0.77)
    acc.r("dell_bracket_oracle", float(np.max(np.abs(dell.pbs_flow(x, params) - dell.dell_quadric_rhs(x, params)))))
    c = cf.euler4_coefficients
    acc.r("dell_euler4_coefficients", float(np.max(np.abs(c - cf.K * np.array([1, 1, 1, g * g])))))


def _trial_dynamics(seed: int, acc: _Acc):
    rng = _rng(seed)
    while True:
        I = euler.Inertia3(*np.sort(rng.uniform(0.5, 3.0, size=3)))
        M0 = rng.normal(size=3)
        try:
            euler.euler3_closed_form(I, M0)
            break
        except GJTrigError:
            continue
    _top3_check(I, M0, 5.0, acc, "random_tops3")
    _top4_check(rng, acc)
    _axiom_checks(rng, acc, with_fi4=(seed % 8 == 0))
    _dell_check(rng, acc)
    acc.c("trials")


def dynamics_fixed(acc: _Acc):
    I, M0 = TOP3_EXAMPLE
    _top3_check(I, M0, 10.0, acc, "example_top3")
    # always include at least one order-4 fundamental identity
    _axiom_checks(np.random.default_rng(0), acc, with_fi4=True)


# ------------------------------------------------------------------ 9: collapse


def _trial_collapse(seed: int, acc: _Acc):
    rng = _rng(seed)
    while True:
        t_ik, t_jk = rng.uniform(0.05, math.pi - 0.05, size=2)
        branch = "minus" if rng.random() < 0.5 else "plus"
        t_ij = t_ik + t_jk if branch == "minus" else abs(t_ik - t_jk)
        if 0.01 < t_ij < math.pi - 0.01:
            break
    col = sph.collapse_triangle(t_ij, t_ik, t_jk)
    acc.r("triangle_branch_mismatch", float(col.branch != branch))
    acc.r("triangle_branch_residual", col.residual)
    acc.d("triangle_other_branch_min", -col.other_residual)
    # flat tetrahedron: four unit vectors in a random 3-space
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    n = rng.normal(size=(4, 3)) @ q[:, :3].T
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    theta = np.arccos(np.clip(n @ n.T, -1, 1))
    np.fill_diagonal(theta, 0.0)
    g6 = math.sqrt(max(det(np.cos(theta)), 0.0))
    if g6 < 1e-8:
        tc = tetra.collapse_tetrahedron(theta, gsin_tol=1e-8)
        acc.r("tetra_triple_sine", max(tc.vertex_triple_sines))
        acc.r("tetra_not_all_vanishing", float(not all(tc.vanishing)))
        acc.c("flat_tetrahedra")
    else:
        acc.c("flat_tetrahedra_skipped")
    acc.c("triangles")


# ------------------------------------------------------------------ registry

TRIALS: dict[str, Callable[[int, _Acc], None]] = {
    "multivec": _trial_multivec,
    "spherical": _trial_spherical,
    "hyperspherical": _trial_hyperspherical,
    "mdim": _trial_mdim,
    "elliptic": _trial_elliptic,
    "gj": _trial_gj,
    "uni_spherical": _trial_uni_spherical,
    "uni_symtet": _trial_uni_symtet,
    "uni_gjid": _trial_uni_gjid,
    "dynamics": _trial_dynamics,
    "collapse": _trial_collapse,
}


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    trial: str
    default_trials: int
    tolerances: dict[str, float]
    fixed: Callable[[_Acc], None] | None = None
    budget_s: float = 60.0


SUITES: dict[str, SuiteSpec] = {
    "multivec": SuiteSpec("multivec", "multivec", 1000,
                          {"nested": 1e-9, "plucker": 1e-9, "five_vector": 1e-9}, budget_s=10),
    "spherical": SuiteSpec("spherical", "spherical", 10000, {
        k: 1e-9 for k in ("cosine_rule_vs_vectors", "gsin_vs_det", "sine_rule", "polar_cosine_rule",
                          "sine_constant_from_angles", "excess", "four_parts", "five_parts")}, budget_s=10),
    "hyperspherical": SuiteSpec("hyperspherical", "hyperspherical", 1000, {
        k: 1e-8 for k in ("dihedral_vs_vectors", "sin_phi", "gsin6_vs_det", "sine_rule", "product_sine",
                          "vertex_sine", "desnanot_jacobi", "cosine_ratios", "polar_cosine_cleared",
                          "vertex_cosine", "vertex_polar_cosine", "face_vertex_mixed", "four_parts",
                          "five_parts")}, budget_s=30),
    "mdim": SuiteSpec("mdim", "mdim", 100, {
        k: 1e-8 for k in ("cosine_rule_m6", "facet_normal_gram_m5", "sine_constant_m5", "polar_cosine_m5",
                          "hierarchy_step_m5", "hierarchy_chain_m5")}, budget_s=60),
    "elliptic": SuiteSpec("elliptic", "elliptic", 1000, {
        "K_vs_quadrature": 1e-11, "landen_vs_quadrature": 1e-11, "sn_vs_inversion": 1e-11,
        "pythagorean": 1e-11, "addition": 1e-11, "yang_baxter": 1e-10, "derivatives_fd": 1e-6},
        fixed=elliptic_grid, budget_s=10),
    "gj": SuiteSpec("gj", "gj", 1000, {
        "identities": 1e-11, "reduction_vs_inversion": 1e-10, "derivatives_fd": 1e-6, "addition": 1e-9,
        "curve": 1e-10, "curve_image": 1e-10}, budget_s=20),
    "uniformize-spherical": SuiteSpec("uniformize-spherical", "uni_spherical", 300, {
        "b_cosine_rule": 1e-9, "b_sine_constant": 1e-9, "b_sine_rule": 1e-9, "b_sn": 1e-9, "b_dn": 1e-9,
        "b_real_branch": 1e-9, "a_dictionary": 1e-8, "a_real_branch": 1e-8, "W_derivative": 1e-8,
        "differential_order_gap": 0.1}, budget_s=10),
    "uniformize-symmetric-tet": SuiteSpec("uniformize-symmetric-tet", "uni_symtet", 50, {
        "reduced_sine_rule": 1e-8, "opposite_dihedral_gap": 1e-8, "hyp_W_derivative": 1e-8,
        "differential_order_gap": 0.1}, budget_s=10),
    "uniformize-gj-id": SuiteSpec("uniformize-gj-id", "uni_gjid", 100, {
        "face_constant_spread": 1e-8, "vertex_constant_spread": 1e-8, "gj_sine_dictionary": 1e-8,
        "gj_cosine_dictionary": 1e-8, "gj_angles_from_u": 1e-8}, budget_s=10),
    "dynamics": SuiteSpec("dynamics", "dynamics", 8, {
        "top3_closed_vs_integrator": 1e-6, "top3_drift": 1e-8, "top3_printed_modulus_ode": 1e-8,
        "top3_closed_form_invariants": 1e-10, "top3_bracket_vs_rhs": 1e-12,
        "top4_closed_vs_integrator": 1e-6, "top4_drift": 1e-8, "top4_closed_form_ode": 1e-8,
        "top4_closed_form_invariants": 1e-8, "top4_bracket_vs_rhs": 1e-12,
        "takhtajan_skew": 1e-10, "takhtajan_leibniz": 1e-10, "takhtajan_fundamental": 1e-10,
        "dell_dual_hamiltonian": 1e-10, "dell_hamilton_fd": 1e-6, "dell_energy_drift": 1e-8,
        "dell_closed_vs_flow": 1e-6, "dell_casimir_drift": 1e-8, "dell_closed_form_quadrics": 1e-8,
        "dell_bracket_oracle": 1e-12, "dell_euler4_coefficients": 1e-12},
        fixed=dynamics_fixed, budget_s=60),
    "collapse": SuiteSpec("collapse", "collapse", 1000, {
        "triangle_branch_mismatch": 0.0, "triangle_branch_residual": 1e-12, "tetra_triple_sine": 1e-8,
        "tetra_not_all_vanishing": 0.0}, budget_s=5),
}

UNIFORMIZE_SUBSUITES = {"spherical": "uniformize-spherical", "symmetric-tet": "uniformize-symmetric-tet",
                        "gj-id": "uniformize-gj-id"}

# acceptance criterion number -> suites
CRITERIA: dict[int, list[str]] = {
    1: ["multivec"], 2: ["spherical"], 3: ["hyperspherical"], 4: ["mdim"], 5: ["elliptic"], 6: ["gj"],
    7: ["uniformize-spherical", "uniformize-symmetric-tet", "uniformize-gj-id"], 8: ["dynamics"], 9: ["collapse"],
}


def run_suite(name: str, trials: int | None = None, seed: int = 0, tol_scale: float = 1.0,
              tol: float | None = None, workers: int | None = None) -> SuiteReport:
    """Run one suite. ``tol`` replaces every tolerance; ``tol_scale`` multiplies them."""
    spec = SUITES[name]
    n = spec.default_trials if trials is None else int(trials)
    if n < 0:
        raise ValueError("trials must be non-negative")
    t_start = time.perf_counter()
    acc = _Acc()
    if spec.fixed is not None:
        spec.fixed(acc)
    if n:
        acc.merge(run_trials(spec.trial, n, seed, workers))
    tols = {k: (tol if tol is not None else v) * tol_scale for k, v in spec.tolerances.items()}
    # checks that had nothing to measure are reported as zero, with a counter saying so
    res = dict(acc.res)
    for k in tols:
        if k not in res:
            res[k] = 0.0
            acc.c(f"{k}_not_exercised")
    return SuiteReport(name, n, int(seed), float(tol_scale), res, tols, acc.diag, acc.cnt,
                       time.perf_counter() - t_start)


def suite_names() -> list[str]:
    return list(SUITES)
