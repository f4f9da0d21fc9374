"""MOEA/D: decomposition into N Tchebycheff subproblems on a weight lattice."""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial.distance import cdist

from ..kernel.individual import objectives_of
from ..problems.weights import smallest_lattice
from ..registry import register

#: Substitute for zero weights so every objective keeps some influence.
WEIGHT_FLOOR = 1e-6


def tchebycheff(obj_vector, weight, ideal_z) -> float:
    """max_i  max(w_i, 1e-6) * |f_i - z_i|."""
    f = np.asarray(obj_vector, dtype=float)
    w = np.maximum(np.asarray(weight, dtype=float), WEIGHT_FLOOR)
    z = np.asarray(ideal_z, dtype=float)
    return float(np.max(w * np.abs(f - z)))


def _tchebycheff_rows(obj_rows, weights, ideal_z):
    w = np.maximum(weights, WEIGHT_FLOOR)
    return np.max(w * np.abs(obj_rows - ideal_z), axis=-1)


@register(
    "algorithm",
    "MOEAD",
    description="Multi-objective evolutionary algorithm based on decomposition",
    labels=("algorithm", "multi-objective", "decomposition"),
    default_operator="DE",
    params=[("T", 0.0, "neighborhood size (0 = ceil(N/10))")],
)
def moead(run):
    n = run.config.n
    (t_param,) = run.parameter_set("MOEAD", (0.0,))
    t = int(t_param) if t_param else math.ceil(n / 10)
    t = max(2, min(t, n))

    weights, _ = smallest_lattice(run.config.m, n)
    weights = weights[:n]
    neighbors = np.argsort(cdist(weights, weights), axis=1, kind="stable")[:, :t]

    population = run.initialization()
    z = objectives_of(population).min(axis=0)
    use_de = run.operator_info.name.upper() == "DE"
    ideal_trace = run.trace.setdefault("ideal", [])
    ideal_trace.append(z.copy())
    while run.not_terminated(population):
        for i in range(n):
            hood = neighbors[i]
            if use_de:
                picks = run.rng.permutation(len(hood))[:2]
                parents = [population[i], population[hood[picks[0]]], population[hood[picks[1]]]]
            else:
                pick = int(run.rng.integers(len(hood)))
                parents = [population[i], population[hood[pick]]]
            (child,) = run.variation(parents, count=1)
            z = np.minimum(z, child.obj)
            old = _tchebycheff_rows(objectives_of([population[j] for j in hood]), weights[hood], z)
            new = _tchebycheff_rows(child.obj, weights[hood], z)
            for j, improved in zip(hood, new <= old):
                if improved:
                    population[j] = child
        ideal_trace.append(z.copy())
