"""Adaptive Dormand-Prince 5(4) integrator.

Works for real or complex state vectors. Used as an independent oracle for
the closed-form solutions, so it shares no code with them. Sample times are
served either by shortening steps to land on them (``dense="exact"``, the
default) or by cubic Hermite interpolation between accepted steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ..errors import StiffnessError

# Butcher tableau (FSAL)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

MIN_REL_TOL = 1e-12


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = np.inf
    first_step: float | None = None
    min_step: float = 1e-14
    max_steps: int = 2_000_000
    safety: float = 0.9
    dense: str = "exact"


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution; ``ledger`` maps a conserved-quantity name to its samples."""

    times: np.ndarray
    states: np.ndarray
    ledger: dict[str, np.ndarray] = field(default_factory=dict)
    n_steps: int = 0
    n_rejected: int = 0

    def __post_init__(self):
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("trajectory times must be strictly increasing")

    def drift(self, name: str, relative: bool = True) -> float:
        v = self.ledger[name]
        d = float(np.max(np.abs(v - v[0])))
        if relative:
            d /= max(1.0, float(abs(v[0])))
        return d


def _hermite(t0, t1, y0, y1, f0, f1, t):
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def _error_norm(err, y0, y1, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))


def integrate(rhs: Callable[[float, np.ndarray], np.ndarray], y0, t_span: tuple[float, float],
              rel_tol: float = 1e-10, t_eval: Sequence[float] | None = None,
              invariants: Mapping[str, Callable[[np.ndarray], complex | float]] | None = None,
              config: IntegratorConfig | None = None) -> Trajectory:
    """Integrate y' = rhs(t, y) over ``t_span`` (forward only).

    ``t_eval`` defaults to the accepted step points. The final time is
    always reached exactly. ``invariants`` fill the trajectory ledger.
    Cubic Hermite sampling has an O(h^4) error of about 1e-8 at
    rel_tol 1e-10, so the exact mode is the one to use for drift checks.
    """
    cfg = config or IntegratorConfig(rel_tol=rel_tol)
    rtol = cfg.rel_tol
    if cfg.dense not in ("exact", "hermite"):
        raise ValueError("dense must be 'exact' or 'hermite'")
    if rtol < MIN_REL_TOL:
        raise ValueError(f"rel_tol must be at least {MIN_REL_TOL}")
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("need t_span[1] > t_span[0]")
    y = np.array(y0, dtype=complex if np.iscomplexobj(y0) else float)
    f = np.asarray(rhs(t0, y), dtype=y.dtype)

    if t_eval is None:
        out_t, out_y = [t0], [y.copy()]
        want = None
    else:
        want = np.asarray(t_eval, dtype=float)
        if np.any(np.diff(want) <= 0) or want[0] < t0 or want[-1] > t1:
            raise ValueError("t_eval must be increasing and inside t_span")
        out_t, out_y = [], []
        wi = 0
        while wi < len(want) and want[wi] == t0:
            out_t.append(t0)
            out_y.append(y.copy())
            wi += 1

    # initial step (Hairer-Norsett-Wanner heuristic)
    if cfg.first_step is not None:
        h = cfg.first_step
    else:
        sc = cfg.abs_tol + rtol * np.abs(y)
        d0 = np.sqrt(np.mean(np.abs(y / sc) ** 2))
        d1 = np.sqrt(np.mean(np.abs(f / sc) ** 2))
        h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h = min(h, cfg.max_step, t1 - t0)
    t = t0
    n_steps = n_rej = 0
    k = [None] * 7
    while t < t1:
        if n_steps + n_rej > cfg.max_steps:
            raise StiffnessError("step budget exhausted")
        h = min(h, cfg.max_step)
        h_free = h
        stop = t1
        if want is not None and cfg.dense == "exact" and wi < len(want):
            stop = want[wi]
        last = t + h >= stop
        if last:
            h = stop - t
        k[0] = f
        for s in range(1, 7):
            ys = y + h * sum(a * k[j] for j, a in enumerate(_A[s]) if a != 0.0)
            k[s] = np.asarray(rhs(t + _C[s] * h, ys), dtype=y.dtype)
        y_new = y + h * sum(b * k[j] for j, b in enumerate(_B5) if b != 0.0)
        err = h * sum(e * k[j] for j, e in enumerate(_E) if e != 0.0)
        en = _error_norm(err, y, y_new, rtol, cfg.abs_tol)
        if en <= 1.0 or h <= cfg.min_step:
            if h <= cfg.min_step and en > 1.0:
                raise StiffnessError(f"step size underflow at t={t:.6g}")
            t_new = stop if last else t + h
            f_new = k[6]
            if want is None:
                out_t.append(t_new)
                out_y.append(y_new.copy())
            else:
                while wi < len(want) and want[wi] <= t_new:
                    tw = want[wi]
                    yw = y_new.copy() if tw == t_new else _hermite(t, t_new, y, y_new, f, f_new, tw)
                    out_t.append(tw)
                    out_y.append(yw)
                    wi += 1
            t, y, f = t_new, y_new, f_new
            n_steps += 1
            fac = 5.0 if en == 0.0 else min(5.0, max(0.2, cfg.safety * en ** -0.2))
            # a step clipped to hit a sample time should not shrink the next one
            h = max(h * fac, h_free) if last and h < h_free else h * fac
        else:
            n_rej += 1
            h *= max(0.2, cfg.safety * en ** -0.2)
            if h < cfg.min_step:
                raise StiffnessError(f"step size underflow at t={t:.6g}")

    times = np.array(out_t)
    states = np.array(out_y)
    ledger = {}
    for name, fn in (invariants or {}).items():
        ledger[name] = np.array([fn(s) for s in states])
    return Trajectory(times, states, ledger, n_steps, n_rej)
