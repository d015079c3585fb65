from __future__ import annotations

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hd_transform.core.prf import (
    MASK64,
    index_word,
    prf,
    prf_words,
    rademacher,
    uniform_open,
)

u64 = st.integers(min_value=0, max_value=MASK64)


@given(u64, u64, u64)
def test_prf_is_a_deterministic_64_bit_word(seed, stream, index):
    w = prf(seed, stream, index)
    assert 0 <= w <= MASK64
    assert w == prf(seed, stream, index)


def test_vectorized_words_match_scalar_calls():
    streams = np.arange(16, dtype=np.uint64)
    words = prf_words(42, streams, 5)
    assert [int(w) for w in words] == [prf(42, i, 5) for i in range(16)]


def test_seed_stream_and_index_all_change_the_word():
    base = prf(1, 2, 3)
    assert prf(2, 2, 3) != base
    assert prf(1, 3, 3) != base
    assert prf(1, 2, 4) != base


def test_rademacher_is_balanced():
    signs = rademacher(prf_words(9, np.arange(10000, dtype=np.uint64), 0))
    assert set(np.unique(signs)) == {-1.0, 1.0}
    assert abs(float(np.mean(signs))) < 0.05


def test_uniform_open_stays_inside_unit_interval():
    u = uniform_open(prf_words(3, np.arange(10000, dtype=np.uint64), 1))
    assert np.all(u > 0.0) and np.all(u < 1.0)
    assert abs(float(np.mean(u)) - 0.5) < 0.02


def test_uniform_open_extremes():
    words = np.array([0, MASK64], dtype=np.uint64)
    u = uniform_open(words)
    assert 0.0 < u[0] < 1e-15
    assert 1.0 - 1e-15 < u[1] < 1.0


def test_index_word_packs_tag_and_wraps_negative_cells():
    assert index_word(5, 1) == (5 << 3) | 1
    assert index_word(-1, 0) == MASK64 - 7
    assert index_word(-1, 0) != index_word(-2, 0)
