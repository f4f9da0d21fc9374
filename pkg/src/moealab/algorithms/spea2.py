"""SPEA2: strength-based fitness with nearest-neighbor truncation."""
from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from ..kernel.individual import constraints_of, objectives_of
from ..registry import register
from .common import feasibility_transform, tournament_select, violations


def spea2_fitness(obj_matrix) -> np.ndarray:
    """Strength/raw/density fitness; values below 1 mark non-dominated rows."""
    obj = np.asarray(obj_matrix, dtype=float)
    n = len(obj)
    le = np.all(obj[:, None, :] <= obj[None, :, :], axis=2)
    lt = np.any(obj[:, None, :] < obj[None, :, :], axis=2)
    dom = le & lt
    strength = dom.sum(axis=1).astype(float)
    raw = dom.T @ strength
    dist = cdist(obj, obj)
    np.fill_diagonal(dist, np.inf)
    k = max(1, min(int(np.sqrt(n)), n - 1)) if n > 1 else 0
    if k:
        sigma = np.sort(dist, axis=1)[:, k - 1]
    else:
        sigma = np.zeros(n)
    density = 1.0 / (sigma + 2.0)
    return raw + density


def _truncate(obj, keep_count):
    """Drop members one at a time: always the one whose sorted distance
    profile to the survivors is lexicographically smallest."""
    alive = list(range(len(obj)))
    dist = cdist(obj, obj)
    np.fill_diagonal(dist, np.inf)
    while len(alive) > keep_count:
        sub = dist[np.ix_(alive, alive)]
        profiles = np.sort(sub, axis=1)
        victim = np.lexsort(profiles.T[::-1])[0]
        alive.pop(victim)
    return alive


def environmental_selection(population, n):
    """Next archive: the non-dominated set, truncated or filled to ``n``."""
    obj = feasibility_transform(
        objectives_of(population), violations(constraints_of(population))
    )
    fitness = spea2_fitness(obj)
    nd = np.flatnonzero(fitness < 1)
    if len(nd) > n:
        keep_local = _truncate(obj[nd], n)
        chosen = nd[np.sort(keep_local)]
    else:
        order = np.argsort(fitness, kind="stable")
        chosen = np.sort(order[:n])
    survivors = [population[i] for i in chosen]
    return survivors, fitness[chosen]


@register(
    "algorithm",
    "SPEA2",
    description="Strength Pareto evolutionary algorithm 2",
    labels=("algorithm", "multi-objective"),
    default_operator="EAreal",
)
def spea2(run):
    n = run.config.n
    archive, fitness = environmental_selection(run.initialization(), n)
    while run.not_terminated(archive):
        parents = tournament_select(run.rng, n, fitness)
        offspring = run.variation([archive[i] for i in parents])
        archive, fitness = environmental_selection(archive + offspring, n)
