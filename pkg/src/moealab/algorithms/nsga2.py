"""NSGA-II: non-dominated sorting with crowding-distance truncation."""
from __future__ import annotations

import numpy as np

from ..kernel.individual import objectives_of
from ..registry import register
from .common import crowding_distance, ranked_fronts, tournament_select


def environmental_selection(population, n):
    """Keep ``n`` individuals: whole fronts, then the critical front by
    descending crowding distance (stable on ties)."""
    fronts = ranked_fronts(population, n)
    front_no = fronts.front_no
    crowd = crowding_distance(objectives_of(population), front_no)
    keep = front_no < fronts.max_front
    critical = np.flatnonzero(front_no == fronts.max_front)
    missing = n - int(keep.sum())
    order = np.argsort(-crowd[critical], kind="stable")
    chosen = np.concatenate([np.flatnonzero(keep), critical[order[:missing]]])
    chosen.sort()
    survivors = [population[i] for i in chosen]
    return survivors, front_no[chosen], crowd[chosen]


@register(
    "algorithm",
    "NSGAII",
    description="Non-dominated sorting genetic algorithm II",
    labels=("algorithm", "multi-objective"),
    default_operator="EAreal",
)
def nsgaii(run):
    n = run.config.n
    population = run.initialization()
    fronts = ranked_fronts(population)
    front_no = fronts.front_no
    crowd = crowding_distance(objectives_of(population), front_no)
    while run.not_terminated(population):
        parents = tournament_select(run.rng, n, front_no, -crowd)
        offspring = run.variation([population[i] for i in parents])
        population, front_no, crowd = environmental_selection(
            population + offspring, n
        )
