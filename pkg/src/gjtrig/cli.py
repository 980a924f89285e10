"""Command-line entry point ``gjtrig``.

Subcommands: verify, eval, simulate, sample. Exit codes: 0 pass, 1 suite
failure, 2 usage or input error (message on stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from . import elliptic as ell
from . import suites
from .errors import GJTrigError
from .gjelliptic import GJModuli, gj_eval
from .simplex_trig.sampling import config_json, sample_unit_vectors

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITE_ALIASES = {
    "all": list(suites.SUITES),
    "simplex_trig": ["spherical", "hyperspherical", "mdim", "collapse"],
    "gjelliptic": ["gj"],
    "uniformize": ["uniformize-spherical", "uniformize-symmetric-tet", "uniformize-gj-id"],
}
SCHEMA = suites.SCHEMA


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so ``run`` controls the exit code."""

    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise GJTrigError(f"non-finite result {x!r}")
    return x


# ------------------------------------------------------------------ verify


def _resolve_suites(target: str | None, name: str) -> list[str]:
    if target == "uniformize":
        if name == "all":
            return SUITE_ALIASES["uniformize"]
        full = suites.UNIFORMIZE_SUBSUITES.get(name)
        if full is None:
            raise UsageError(f"unknown uniformize suite {name!r}; choose from "
                             f"{', '.join(suites.UNIFORMIZE_SUBSUITES)} or all\n")
        return [full]
    if target is not None:
        raise UsageError(f"unknown verify target {target!r}\n")
    if name in SUITE_ALIASES:
        return SUITE_ALIASES[name]
    if name in suites.SUITES:
        return [name]
    raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(list(SUITE_ALIASES)[1:])}, "
                     f"{', '.join(suites.SUITES)}\n")


def cmd_verify(a, out) -> int:
    names = _resolve_suites(a.target, a.suite)
    if a.trials is not None and a.trials < 0:
        raise UsageError("--trials must be non-negative\n")
    if a.tol_scale <= 0 or (a.tol is not None and a.tol <= 0):
        raise UsageError("tolerances must be positive\n")
    reports = [suites.run_suite(n, a.trials, a.seed, a.tol_scale, a.tol) for n in names]
    out.write(suites.report_json(reports, timing=a.timing))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


# ------------------------------------------------------------------ eval


def cmd_eval(a, out) -> int:
    if a.func == "gj":
        q = gj_eval(a.u, GJModuli.of(a.k1, a.k2))
        body = {"function": "gj", "u": a.u, "k1": a.k1, "k2": a.k2,
                "s": q.s, "c": q.c, "d1": q.d1, "d2": q.d2, "residuals": q.identity_residuals()}
    elif a.func == "jacobi":
        t = ell.jacobi(a.u, a.k)
        r1, r2 = t.pythagorean_residuals()
        body = {"function": "jacobi", "u": a.u, "k": a.k, "sn": t.sn, "cn": t.cn, "dn": t.dn, "am": t.am,
                "residuals": {"sn2_plus_cn2": r1, "dn2_plus_k2sn2": r2}}
    elif a.func == "K":
        kp = ell.complete_Kp(a.k)
        # K'(0) is a genuine pole; JSON has no infinity, so it is reported as null
        body = {"function": "K", "k": a.k, "K": ell.complete_K(a.k), "Kp": None if math.isinf(kp) else kp,
                "E": ell.complete_E(a.k)}
    else:  # F
        body = {"function": "F", "phi": a.phi, "k": a.k, "F": ell.incomplete_F(a.phi, a.k),
                "E": ell.incomplete_E(a.phi, a.k)}
    body = {"schema": SCHEMA, **{k: (v if v is None or isinstance(v, (str, dict)) else _finite(v)) for k, v in body.items()}}
    out.write(_dump(body))
    return EXIT_PASS


# ------------------------------------------------------------------ simulate

DEFAULT_PARAMS = {
    "top3": {"I": [1.0, 2.0, 3.0], "M0": [0.0, 1.0, 1.0]},
    "top4": {"A": [0.8, 1.1, 0.6], "K": 1.3, "k1": 0.7, "k2": 0.4, "t0": 0.0},
    "dell": {"g": 0.3, "k": 0.7, "E": 0.6, "t0": 0.0},
}


def _load_params(spec: str | None, system: str) -> dict:
    params = dict(DEFAULT_PARAMS[system])
    if spec is None:
        return params
    text = spec if spec.lstrip().startswith("{") else None
    if text is None:
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read --params file: {exc}\n") from exc
    try:
        loaded = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--params is not valid JSON: {exc}\n") from exc
    if not isinstance(loaded, dict):
        raise UsageError("--params must be a JSON object\n")
    unknown = set(loaded) - set(params) - {"modulus", "k_tilde"}
    if unknown:
        raise UsageError(f"unknown parameter(s) for {system}: {', '.join(sorted(unknown))}\n")
    params.update(loaded)
    return params


def _simulate_top3(p, a):
    from .dynamics import euler
    I = euler.Inertia3(*map(float, p["I"]))
    M0 = np.array(p["M0"], dtype=float)
    if M0.shape != (3,):
        raise UsageError("M0 needs three entries\n")
    try:
        base = euler.euler3_closed_form(I, M0, modulus=p.get("modulus", "invariants"))
        sol = lambda t: base(t - a.t0)  # M0 is the state at t0
    except GJTrigError:
        sol = None  # outside the closed form's regime; integrate only
    rhs = lambda t, y: euler.euler3_rhs(y, I)
    inv = {"H1": lambda M: euler.euler3_energy(M, I), "H2": euler.euler3_casimir}
    return ["M1", "M2", "M3"], M0, rhs, inv, sol


def _simulate_top4(p, a):
    from .dynamics import euler
    A = [float(x) for x in p["A"]]
    k1, k2, K = float(p["k1"]), float(p["k2"]), float(p["K"])
    if len(A) == 3:
        A = [euler.conserving_A1(*A, k1, k2), *A]
    elif len(A) != 4:
        raise UsageError("A needs three (A2..A4) or four entries\n")
    sol = euler.euler4_closed_form(A, K, k1, k2, float(p["t0"]))
    params = euler.fit_alpha_beta(sol.coefficients, seed=a.seed)
    rhs = lambda t, y: euler.euler4_rhs(y, params)
    y0 = sol(a.t0)
    return ["M1", "M2", "M3", "M4"], y0, rhs, params.invariants(), sol


def _simulate_dell(p, a):
    from .dynamics import dell
    params = dell.DELLParams(float(p["g"]), float(p["k"]), p.get("k_tilde"))
    sol = dell.dell_closed_form(params, float(p["E"]), t0=float(p["t0"]))
    inv = {f"Q{i + 1}": (lambda y, i=i: dell.quadrics(y, params)[i]) for i in range(4)}
    return [f"x{i}" for i in range(1, 7)], sol(a.t0), dell.dell_flow(params), inv, sol


SYSTEMS = {"top3": _simulate_top3, "top4": _simulate_top4, "dell": _simulate_dell}


def _fmt(x: float) -> str:
    return repr(float(x) + 0.0)  # folds -0.0 into 0.0


def cmd_simulate(a, out) -> int:
    from .dynamics.integrate import IntegratorConfig, integrate

    if not a.t1 > a.t0:
        raise UsageError("--t1 must exceed --t0\n")
    if a.samples < 2:
        raise UsageError("--samples must be at least 2\n")
    p = _load_params(a.params, a.system)
    try:
        names, y0, rhs, inv, sol = SYSTEMS[a.system](p, a)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters for {a.system}: {exc}\n") from exc
    ts = np.linspace(a.t0, a.t1, a.samples)
    cfg = IntegratorConfig(rel_tol=a.rel_tol, max_step=a.max_step)
    tr = integrate(rhs, y0, (a.t0, a.t1), a.rel_tol, t_eval=ts, invariants=inv, config=cfg)
    cplx = np.iscomplexobj(tr.states)

    header = ["t"]
    for n in names:
        header += [f"{n}_re", f"{n}_im"] if cplx else [n]
    for n in inv:
        header += [f"{n}_re", f"{n}_im"] if cplx else [n]
    if sol is not None:
        header.append("closed_form_error")

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for i, t in enumerate(tr.times):
        row = [_fmt(t)]
        for v in tr.states[i]:
            row += [_fmt(v.real), _fmt(v.imag)] if cplx else [_fmt(v)]
        for n in inv:
            v = tr.ledger[n][i]
            row += [_fmt(np.real(v)), _fmt(np.imag(v))] if cplx else [_fmt(np.real(v))]
        if sol is not None:
            row.append(_fmt(np.max(np.abs(np.asarray(sol(t)) - tr.states[i]))))
        w.writerow(row)
    text = buf.getvalue()
    if a.out in (None, "-"):
        out.write(text)
    else:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_PASS


# ------------------------------------------------------------------ sample


def cmd_sample(a, out) -> int:
    if not 2 <= a.m <= 8:
        raise UsageError("--m must lie in 2..8\n")
    if a.count < 1:
        raise UsageError("--count must be positive\n")
    from .rng import trial_seed
    recs = [config_json(sample_unit_vectors(a.m, trial_seed(a.seed, i))) for i in range(a.count)]
    out.write(_dump(recs[0] if a.count == 1 else recs))
    return EXIT_PASS


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gjtrig", description="Simplex trigonometry, generalized Jacobi functions and Nambu tops.")
    p.add_argument("--version", action="version", version=f"gjtrig {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run randomized identity suites and print a JSON report")
    v.add_argument("target", nargs="?", choices=["uniformize"], help="restrict to the uniformize sub-suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--trials", type=int, default=None, help="trials per suite (default: the suite's own)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol-scale", type=float, default=1.0, help="multiplies every tolerance")
    v.add_argument("--tol", type=float, default=None, help="replace every tolerance with this value")
    v.add_argument("--timing", action="store_true", help="include wall time (output is then not byte-stable)")

    e = sub.add_parser("eval", help="evaluate a function and print JSON")
    esub = e.add_subparsers(dest="func", required=True, parser_class=_Parser)
    g = esub.add_parser("gj")
    g.add_argument("--u", type=float, required=True)
    g.add_argument("--k1", type=float, required=True)
    g.add_argument("--k2", type=float, required=True)
    j = esub.add_parser("jacobi")
    j.add_argument("--u", type=float, required=True)
    j.add_argument("--k", type=float, required=True)
    k = esub.add_parser("K")
    k.add_argument("--k", type=float, required=True)
    f = esub.add_parser("F")
    f.add_argument("--phi", type=float, required=True)
    f.add_argument("--k", type=float, required=True)

    s = sub.add_parser("simulate", help="integrate a top or the DELL flow and write CSV")
    s.add_argument("system", choices=list(SYSTEMS))
    s.add_argument("--t0", type=float, default=0.0)
    s.add_argument("--t1", type=float, default=10.0)
    s.add_argument("--rel-tol", type=float, default=1e-10)
    s.add_argument("--max-step", type=float, default=math.inf)
    s.add_argument("--samples", type=int, default=101)
    s.add_argument("--seed", type=int, default=0, help="seed for the top4 Hamiltonian fit")
    s.add_argument("--params", default=None, help="JSON file (or inline JSON object)")
    s.add_argument("--out", default=None, help="CSV path (default stdout)")

    sm = sub.add_parser("sample", help="emit sampled configurations as JSON")
    sm.add_argument("--m", type=int, default=3)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--count", type=int, default=1)
    return p


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "simulate": cmd_simulate, "sample": cmd_sample}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        return COMMANDS[a.command](a, out)
    except UsageError as exc:
        err.write(str(exc))
        return EXIT_USAGE
    except (GJTrigError, ZeroDivisionError, ValueError) as exc:
        err.write(f"gjtrig: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


def main() -> None:
    if "GJTRIG_THREADS" in os.environ and not os.environ["GJTRIG_THREADS"].strip().isdigit():
        sys.stderr.write("gjtrig: GJTRIG_THREADS must be a positive integer; ignoring it\n")
    sys.exit(run())


if __name__ == "__main__":
    main()
