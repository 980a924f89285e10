"""Counter-based seed expansion (splitmix64) for per-trial determinism."""

from __future__ import annotations

import os

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(master: int, index: int) -> int:
    """Seed of trial ``index``: splitmix64 of master + index * golden (mod 2^64)."""
    return splitmix64((int(master) + int(index) * GOLDEN) & MASK64)


def trial_seeds(master: int, count: int, start: int = 0) -> list[int]:
    return [trial_seed(master, start + i) for i in range(count)]


def thread_cap(default: int | None = None) -> int:
    """Worker count from GJTRIG_THREADS (>= 1); falls back to the CPU count."""
    raw = os.environ.get("GJTRIG_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return default or os.cpu_count() or 1
