"""IBEA: selection driven by the additive epsilon indicator."""
from __future__ import annotations

import numpy as np

from ..kernel.individual import objectives_of
from ..registry import register
from .common import tournament_select


def _indicator_parts(obj_matrix):
    """Normalized objectives, pairwise indicator matrix and its scale."""
    obj = np.asarray(obj_matrix, dtype=float)
    lo = obj.min(axis=0)
    span = obj.max(axis=0) - lo
    norm = np.zeros_like(obj)
    np.divide(obj - lo, span, out=norm, where=span > 0)
    # eps[i, j]: additive shift after which i weakly dominates j
    eps = np.max(norm[:, None, :] - norm[None, :, :], axis=2)
    scale = np.abs(eps).max()
    if scale == 0:
        scale = 1.0
    return norm, eps, scale


def epsilon_fitness(obj_matrix, kappa=0.05) -> np.ndarray:
    """fitness(i) = sum_{j != i} -exp(-eps(j, i) / (c * kappa))."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    _, eps, scale = _indicator_parts(obj_matrix)
    weight = np.exp(-eps / (scale * kappa))
    np.fill_diagonal(weight, 0.0)
    return -weight.sum(axis=0)


def environmental_selection(population, n, kappa):
    """Drop the worst-fitness member and restore its exponential term on the
    survivors, repeating until ``n`` remain."""
    _, eps, scale = _indicator_parts(objectives_of(population))
    weight = np.exp(-eps / (scale * kappa))
    np.fill_diagonal(weight, 0.0)
    fitness = -weight.sum(axis=0)
    alive = np.ones(len(population), dtype=bool)
    for _ in range(len(population) - n):
        candidates = np.flatnonzero(alive)
        worst = candidates[np.argmin(fitness[candidates])]
        alive[worst] = False
        fitness[alive] += weight[worst, alive]
    chosen = np.flatnonzero(alive)
    return [population[i] for i in chosen], fitness[chosen]


@register(
    "algorithm",
    "IBEA",
    description="Indicator-based evolutionary algorithm",
    labels=("algorithm", "multi-objective", "indicator-based"),
    default_operator="EAreal",
    params=[("kappa", 0.05, "fitness scaling factor of the epsilon indicator")],
)
def ibea(run):
    n = run.config.n
    (kappa,) = run.parameter_set("IBEA", (0.05,))
    population = run.initialization()
    fitness = epsilon_fitness(objectives_of(population), kappa)
    while run.not_terminated(population):
        parents = tournament_select(run.rng, n, -fitness)
        offspring = run.variation([population[i] for i in parents])
        population, fitness = environmental_selection(
            population + offspring, n, kappa
        )
