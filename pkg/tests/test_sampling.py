import json

import numpy as np
import pytest

from gjtrig.errors import SamplingError
from gjtrig.simplex_trig import sampling
from gjtrig.simplex_trig.mdim import SimplexConfig


def test_same_seed_same_sample():
    for m in (3, 4, 6):
        a = sampling.sample_unit_vectors(m, 123)
        b = sampling.sample_unit_vectors(m, 123)
        assert np.array_equal(a, b)
    assert not np.array_equal(sampling.sample_unit_vectors(4, 1), sampling.sample_unit_vectors(4, 2))


@pytest.mark.parametrize("m", [3, 4, 5, 8])
def test_acceptance_rate_and_filters(m):
    stats = sampling.SampleStats()
    rng = np.random.default_rng(m)
    cfg = sampling.SamplerConfig()
    lo, hi = np.cos(np.pi - cfg.angle_margin), np.cos(cfg.angle_margin)
    for _ in range(1000):
        n = sampling.sample_unit_vectors(m, rng, stats=stats)
        g = n @ n.T
        off = g[~np.eye(m, dtype=bool)]
        assert np.all((off > lo) & (off < hi))
        assert np.linalg.det(g) > cfg.det_floor * (1 - 1e-9)
    assert stats.accepted == 1000
    assert stats.acceptance_rate > 0.5


def test_exhausted_sampler():
    cfg = sampling.SamplerConfig(det_floor=2.0, max_rejections=5)
    with pytest.raises(SamplingError):
        sampling.sample_unit_vectors(3, 0, cfg)


def test_config_json_round_trip():
    n = sampling.sample_unit_vectors(4, 7)
    rec = json.loads(json.dumps(sampling.config_json(n)))
    assert rec["m"] == 4 and len(rec["cos"]) == 6
    assert np.allclose(SimplexConfig.from_json(rec).gram, n @ n.T, atol=1e-15)


def test_typed_samplers():
    assert sampling.sample_triangle(3).gsin > 0
    assert sampling.sample_tetrahedron(3).gsin6 > 0
    assert sampling.sample_simplex(6, 3).m == 6
