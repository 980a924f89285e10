"""Seeded rejection samplers for triangles, tetrahedra and m-simplices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SamplingError
from ..multivec import det
from .mdim import SimplexConfig
from .spherical import SphericalTriangle
from .tetra import HypersphericalTetrahedron

ANGLE_MARGIN = 0.05
DET_FLOOR = 1e-6
MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class SamplerConfig:
    angle_margin: float = ANGLE_MARGIN
    det_floor: float = DET_FLOOR
    max_rejections: int = MAX_REJECTIONS


@dataclass
class SampleStats:
    accepted: int = 0
    rejected: int = 0

    @property
    def acceptance_rate(self) -> float:
        total = self.accepted + self.rejected
        return self.accepted / total if total else float("nan")


def sample_unit_vectors(m: int, seed, cfg: SamplerConfig = SamplerConfig(), stats: SampleStats | None = None) -> np.ndarray:
    """m i.i.d. uniform unit vectors in R^m passing the angle and Gram filters."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    lo, hi = np.cos(np.pi - cfg.angle_margin), np.cos(cfg.angle_margin)
    off = ~np.eye(m, dtype=bool)
    for _ in range(cfg.max_rejections):
        n = rng.standard_normal((m, m))
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        g = n @ n.T
        c = g[off]
        if np.all(c > lo) and np.all(c < hi) and det(g) > cfg.det_floor:
            if stats is not None:
                stats.accepted += 1
            return n
        if stats is not None:
            stats.rejected += 1
    raise SamplingError(f"{cfg.max_rejections} consecutive rejections for m={m}")


def sample_triangle(seed, cfg: SamplerConfig = SamplerConfig(), stats=None) -> SphericalTriangle:
    return SphericalTriangle.from_vectors(sample_unit_vectors(3, seed, cfg, stats))


def sample_tetrahedron(seed, cfg: SamplerConfig = SamplerConfig(), stats=None) -> HypersphericalTetrahedron:
    return HypersphericalTetrahedron.from_vectors(sample_unit_vectors(4, seed, cfg, stats))


def sample_simplex(m: int, seed, cfg: SamplerConfig = SamplerConfig(), stats=None) -> SimplexConfig:
    return SimplexConfig.from_vectors(sample_unit_vectors(m, seed, cfg, stats))


def config_json(n) -> dict:
    """{"m": int, "cos": [row-major upper triangle]} for a set of vectors."""
    return SimplexConfig.from_vectors(n).to_json()
