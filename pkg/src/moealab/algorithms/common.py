"""Selection subroutines shared by the bundled algorithms."""
from __future__ import annotations

import numpy as np

from ..kernel.individual import constraints_of, objectives_of
from ..nds import FrontAssignment, nd_sort


def violations(con_matrix) -> np.ndarray:
    """Total constraint violation per row; zero for unconstrained rows."""
    con = np.asarray(con_matrix, dtype=float)
    if con.size == 0:
        return np.zeros(con.shape[0])
    return np.clip(con, 0.0, None).sum(axis=1)


def feasibility_transform(obj, cv) -> np.ndarray:
    """Feasibility-first pre-transform for dominance-based ranking.

    Infeasible rows are projected above the feasible block, offset by their
    total violation, so ordinary non-dominated sorting yields: feasible
    solutions ranked by dominance, then infeasible ones by violation.
    """
    obj = np.asarray(obj, dtype=float)
    cv = np.asarray(cv, dtype=float)
    infeasible = cv > 0
    if not infeasible.any():
        return obj
    feasible = ~infeasible
    base = obj[feasible].max(axis=0) if feasible.any() else obj.max(axis=0)
    out = obj.copy()
    out[infeasible] = base + cv[infeasible, None]
    return out


def ranked_fronts(population, n_sort=None, method="auto") -> FrontAssignment:
    """Non-dominated fronts of a population with the constraint hook applied."""
    obj = objectives_of(population)
    cv = violations(constraints_of(population))
    return nd_sort(feasibility_transform(obj, cv), n_sort, method)


def crowding_distance(obj_matrix, front_no) -> np.ndarray:
    """Per-front crowding distances.

    Boundary individuals of each front get +inf per objective; interior ones
    accumulate (next - prev) / (max - min); an objective with zero range
    contributes nothing.
    """
    obj = np.asarray(obj_matrix, dtype=float)
    front_no = np.asarray(front_no, dtype=float)
    n, m = obj.shape
    distance = np.zeros(n)
    for front in np.unique(front_no[np.isfinite(front_no)]):
        members = np.flatnonzero(front_no == front)
        if len(members) <= 2:
            distance[members] = np.inf
            continue
        sub = obj[members]
        for j in range(m):
            order = np.argsort(sub[:, j], kind="stable")
            span = sub[order[-1], j] - sub[order[0], j]
            distance[members[order[0]]] = np.inf
            distance[members[order[-1]]] = np.inf
            if span <= 0:
                continue
            gaps = (sub[order[2:], j] - sub[order[:-2], j]) / span
            inner = members[order[1:-1]]
            finite = np.isfinite(distance[inner])
            distance[inner[finite]] += gaps[finite]
    return distance


def tournament_select(rng, count, *keys) -> np.ndarray:
    """Indices of ``count`` binary-tournament winners, with replacement.

    ``keys`` are ascending lexicographic criteria (smaller is better); exact
    ties pick either contestant uniformly at random.
    """
    if count == 0:
        return np.empty(0, dtype=int)
    keys = [np.asarray(k) for k in keys]
    n = len(keys[0])
    stacked = np.column_stack(keys)
    _, rank = np.unique(stacked, axis=0, return_inverse=True)
    pairs = rng.integers(0, n, size=(count, 2))
    ra, rb = rank[pairs[:, 0]], rank[pairs[:, 1]]
    coin = rng.random(count) < 0.5
    take_a = (ra < rb) | ((ra == rb) & coin)
    return np.where(take_a, pairs[:, 0], pairs[:, 1])
