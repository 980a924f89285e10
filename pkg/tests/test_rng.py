from hypothesis import given
from hypothesis import strategies as st

from gjtrig import rng


def test_splitmix_reference_values():
    # reference stream from the published C implementation, seed 0
    state, out = 0, []
    for _ in range(3):
        out.append(rng.splitmix64(state))
        state = (state + rng.GOLDEN) & rng.MASK64
    assert out == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


@given(st.integers(0, 2**63), st.integers(0, 10**6))
def test_trial_seeds_consistent(master, index):
    assert rng.trial_seeds(master, 3, index) == [rng.trial_seed(master, index + i) for i in range(3)]
    assert 0 <= rng.trial_seed(master, index) < 2**64


def test_trial_seeds_distinct():
    seeds = rng.trial_seeds(0, 10000)
    assert len(set(seeds)) == 10000


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("GJTRIG_THREADS", "3")
    assert rng.thread_cap() == 3
    monkeypatch.setenv("GJTRIG_THREADS", "0")
    assert rng.thread_cap() == 1
    monkeypatch.setenv("GJTRIG_THREADS", "junk")
    assert rng.thread_cap(5) == 5
    monkeypatch.delenv("GJTRIG_THREADS")
    assert rng.thread_cap(2) == 2
