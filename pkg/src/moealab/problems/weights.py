"""Simplex-lattice weight vectors (Das-Dennis construction)."""
from __future__ import annotations

import itertools
import math

import numpy as np

# Guard against accidental combinatorial explosions when callers ask for
# fine lattices in many dimensions.
MAX_POINTS = 10_000_000


def das_dennis(m: int, h: int) -> np.ndarray:
    """All weight vectors with components in {0, 1/h, ..., 1} summing to 1.

    Returns C(h+m-1, m-1) rows in lexicographic ascending order.
    """
    if m < 2:
        raise ValueError("das_dennis needs at least two objectives")
    if h < 1:
        raise ValueError("das_dennis needs at least one division")
    rows = math.comb(h + m - 1, m - 1)
    if rows > MAX_POINTS:
        raise ValueError(
            f"simplex lattice with M={m}, H={h} has {rows} points (limit {MAX_POINTS})"
        )
    out = np.empty((rows, m))
    for i, cuts in enumerate(itertools.combinations(range(h + m - 1), m - 1)):
        edges = (-1,) + cuts + (h + m - 1,)
        counts = [edges[j + 1] - edges[j] - 1 for j in range(m)]
        out[i] = counts
    out /= h
    order = np.lexsort(out.T[::-1])
    return out[order]


def smallest_lattice(m: int, size: int) -> tuple[np.ndarray, int]:
    """Lattice with the smallest H whose point count reaches ``size``."""
    if size < 1:
        raise ValueError("size must be positive")
    h = 1
    while math.comb(h + m - 1, m - 1) < size:
        h += 1
    return das_dennis(m, h), h
