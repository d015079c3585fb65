"""
Component-parallel evaluation.

Work over a hypervector is split into contiguous component ranges handled by a thread
pool. Each range computes its components independently, so the concatenated result does
not depend on the number of workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np
import psutil

logger = logging.getLogger(__name__)

MIN_CHUNK = 2048


def resolve_workers(threads: Optional[int] = None) -> int:
    """None and 0 both mean one worker per logical CPU."""
    n = 0 if threads is None else threads
    if n < 0:
        raise ValueError(f"threads must be >= 0, got {n}")
    if n == 0:
        n = psutil.cpu_count(logical=True) or 1
    return n


def chunk_bounds(dim: int, workers: int) -> list[tuple[int, int]]:
    """Split [0, dim) into at most `workers` contiguous ranges of >= MIN_CHUNK components."""
    count = max(1, min(workers, dim // MIN_CHUNK))
    edges = np.linspace(0, dim, count + 1).round().astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def map_components(
    fn: Callable[[int, int], np.ndarray], dim: int, threads: Optional[int] = None
) -> np.ndarray:
    """Evaluate fn(start, stop) over component chunks and concatenate."""
    bounds = chunk_bounds(dim, resolve_workers(threads))
    if len(bounds) == 1:
        return fn(0, dim)
    logger.debug("evaluating %d components in %d chunks", dim, len(bounds))
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        parts = list(pool.map(lambda b: fn(*b), bounds))
    return np.concatenate(parts)
