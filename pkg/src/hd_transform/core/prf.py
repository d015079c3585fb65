"""
Counter-based pseudo-random function.

prf(seed, stream, index) is a stateless splitmix64-style mixer: the same triple gives the
same 64-bit word on every platform. Streams are encoder component indices, so a single
call can produce one word per component as a uint64 array.
"""

from __future__ import annotations

from typing import Union

import numpy as np

MASK64 = (1 << 64) - 1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_STREAM_KEY = np.uint64(0xD1B54A32D192ED03)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S12 = np.uint64(12)
_S63 = np.uint64(63)
_INV_2_52 = 1.0 / float(1 << 52)

IntOrArray = Union[int, np.ndarray]


def _as_u64(value: IntOrArray) -> np.ndarray:
    if isinstance(value, np.ndarray):
        return np.atleast_1d(value.astype(np.uint64, copy=False))
    return np.array([int(value) & MASK64], dtype=np.uint64)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def prf_words(seed: int, stream: IntOrArray, index: IntOrArray) -> np.ndarray:
    """Vectorized prf; stream and index broadcast against each other."""
    key = _mix64(_as_u64(seed) + _GOLDEN)
    s = _mix64(key ^ (_as_u64(stream) * _STREAM_KEY))
    return _mix64(s + _as_u64(index) * _GOLDEN + _GOLDEN)


def prf(seed: int, stream: int, index: int) -> int:
    """Stateless 64-bit pseudo-random word for (seed, stream, index)."""
    return int(prf_words(seed, stream, index)[0])


def rademacher(words: np.ndarray) -> np.ndarray:
    """Map words to +-1.0 by their top bit."""
    return np.where((words >> _S63) == 0, 1.0, -1.0)


def uniform_open(words: np.ndarray) -> np.ndarray:
    """Map words to floats strictly inside (0, 1)."""
    # 52 bits keep k + 0.5 exact, so the result never rounds to 0 or 1
    return ((words >> _S12).astype(np.float64) + 0.5) * _INV_2_52


def index_word(k: int, tag: int) -> int:
    """Pack a signed cell index and a purpose tag into one prf index."""
    return ((int(k) << 3) | int(tag)) & MASK64
