"""NSGA-III: front filling with reference-point niching.

The working population size is the reference-lattice size, i.e. the
requested N rounded up to the nearest simplex-lattice count.
"""
from __future__ import annotations

import numpy as np

from ..kernel.individual import objectives_of
from ..problems.weights import smallest_lattice
from ..registry import register
from .common import ranked_fronts, tournament_select

_ASF_WEIGHT_FLOOR = 1e-6


def nsga3_normalize_associate(obj_matrix, reference_set, ideal=None):
    """Normalize objectives and associate each row with a reference ray.

    Returns (normalized objectives, association index, perpendicular
    distance).  The ideal point defaults to the batch minimum; extreme points
    come from per-axis achievement scalarizing minima, and the simplex
    intercepts fall back to per-dimension maxima whenever the hyperplane
    system is singular or produces non-positive intercepts.
    """
    obj = np.asarray(obj_matrix, dtype=float)
    z = np.asarray(obj.min(axis=0) if ideal is None else ideal, dtype=float)
    translated = obj - z
    m = obj.shape[1]

    weights = np.full((m, m), _ASF_WEIGHT_FLOOR)
    np.fill_diagonal(weights, 1.0)
    asf = np.max(translated[:, None, :] / weights[None, :, :], axis=2)
    extremes = translated[np.argmin(asf, axis=0)]

    intercepts = None
    try:
        plane = np.linalg.solve(extremes, np.ones(m))
        with np.errstate(divide="ignore", over="ignore"):
            candidate = 1.0 / plane
        if np.all(np.isfinite(candidate)) and np.all(candidate > 0):
            intercepts = candidate
    except np.linalg.LinAlgError:
        pass
    if intercepts is None:
        intercepts = translated.max(axis=0)
    intercepts = np.where(intercepts > 1e-12, intercepts, 1.0)

    normalized = translated / intercepts
    rays = np.asarray(reference_set, dtype=float)
    ray_sq = (rays**2).sum(axis=1)
    coeff = normalized @ rays.T / ray_sq
    sq_dist = (normalized**2).sum(axis=1, keepdims=True) - coeff**2 * ray_sq
    dist = np.sqrt(np.clip(sq_dist, 0.0, None))
    assoc = dist.argmin(axis=1)
    return normalized, assoc, dist[np.arange(len(obj)), assoc]


def _niching(rng, missing, rho, assoc, dist, candidates):
    """Pick ``missing`` critical-front members: lowest niche count first
    (random tie-break among references), nearest candidate per pick."""
    chosen = []
    pool = list(candidates)
    while len(chosen) < missing:
        pool_assoc = assoc[pool]
        available = np.unique(pool_assoc)
        counts = rho[available]
        lowest = available[counts == counts.min()]
        ref = int(lowest[rng.integers(len(lowest))])
        members = [i for i in pool if assoc[i] == ref]
        best = min(members, key=lambda i: (dist[i], i))
        chosen.append(best)
        pool.remove(best)
        rho[ref] += 1
    return chosen


def environmental_selection(run, population, n, rays, ideal):
    fronts = ranked_fronts(population, n)
    front_no = fronts.front_no
    keep = np.flatnonzero(front_no < fronts.max_front)
    critical = np.flatnonzero(front_no == fronts.max_front)
    missing = n - len(keep)
    if missing == len(critical):
        chosen = np.sort(np.concatenate([keep, critical]))
        return [population[i] for i in chosen], front_no[chosen]

    considered = np.concatenate([keep, critical])
    obj = objectives_of(population)
    _, assoc, dist = nsga3_normalize_associate(obj[considered], rays, ideal)
    rho = np.zeros(len(rays), dtype=int)
    for local in range(len(keep)):
        rho[assoc[local]] += 1
    local_candidates = list(range(len(keep), len(considered)))
    picked_local = _niching(run.rng, missing, rho, assoc, dist, local_candidates)
    chosen = np.sort(np.concatenate([keep, considered[picked_local]]).astype(int))
    return [population[i] for i in chosen], front_no[chosen]


@register(
    "algorithm",
    "NSGAIII",
    description="Non-dominated sorting genetic algorithm III",
    labels=("algorithm", "many-objective"),
    default_operator="EAreal",
)
def nsgaiii(run):
    rays, _ = smallest_lattice(run.config.m, run.config.n)
    n = len(rays)  # N rounded up to the lattice size
    population = run.initialization(n)
    ideal = objectives_of(population).min(axis=0)
    front_no = ranked_fronts(population).front_no
    while run.not_terminated(population):
        parents = tournament_select(run.rng, n, front_no)
        offspring = run.variation([population[i] for i in parents])
        ideal = np.minimum(ideal, objectives_of(offspring).min(axis=0))
        population, front_no = environmental_selection(
            run, population + offspring, n, rays, ideal
        )
