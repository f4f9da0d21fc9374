"""Reproduction operators for real and binary encodings.

``ea_real`` pairs parents (1,2),(3,4),... for simulated binary crossover
followed by polynomial mutation; ``ea_binary`` performs single-point
crossover plus bitwise mutation; ``de_variation`` produces one trial vector
per call from three parents, followed by polynomial mutation.  Mutation
strength ``pro_m`` is the expected number of mutated variables, applied as a
per-variable probability ``pro_m / D``.  Real offspring are always clamped
to the bounds.
"""
from __future__ import annotations

import numpy as np

from .registry import register


def polynomial_mutation(dec, lower, upper, pro_m, dis_m, rng):
    """Deb's polynomial mutation on each row, per-variable rate pro_m/D.

    Inputs are clamped into the box first: the perturbation magnitude is
    defined through the distance to the bounds, so out-of-box values (e.g.
    unrepaired DE trials) would otherwise produce invalid powers.
    """
    dec = np.array(dec, dtype=float)
    if dec.size == 0:
        return dec
    n, d = dec.shape
    lower = np.broadcast_to(np.asarray(lower, dtype=float), (n, d))
    upper = np.broadcast_to(np.asarray(upper, dtype=float), (n, d))
    dec = np.clip(dec, lower, upper)
    span = upper - lower
    site = rng.random((n, d)) < pro_m / d
    mu = rng.random((n, d))
    norm = np.zeros_like(dec)
    np.divide(dec - lower, span, out=norm, where=span > 0)

    low_side = site & (mu <= 0.5)
    if low_side.any():
        delta = (
            2 * mu[low_side]
            + (1 - 2 * mu[low_side]) * (1 - norm[low_side]) ** (dis_m + 1)
        ) ** (1 / (dis_m + 1)) - 1
        dec[low_side] += span[low_side] * delta

    norm_hi = np.zeros_like(dec)
    np.divide(upper - dec, span, out=norm_hi, where=span > 0)
    high_side = site & (mu > 0.5)
    if high_side.any():
        delta = 1 - (
            2 * (1 - mu[high_side])
            + 2 * (mu[high_side] - 0.5) * (1 - norm_hi[high_side]) ** (dis_m + 1)
        ) ** (1 / (dis_m + 1))
        dec[high_side] += span[high_side] * delta

    return np.clip(dec, lower, upper)


def ea_real(parents_dec, lower, upper, pro_c, dis_c, pro_m, dis_m, rng):
    """SBX crossover over consecutive pairs, then polynomial mutation.

    Crossover engages per pair with probability ``pro_c``; within an engaged
    pair each variable takes part with probability 0.5 and the child roles
    swap per variable with probability 0.5.  An odd trailing parent is
    copied through (and still mutated).  Returns ``len(parents)`` rows.
    """
    parents = np.asarray(parents_dec, dtype=float)
    if parents.ndim != 2 or parents.shape[0] < 2:
        raise ValueError("ea_real needs at least two parents")
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    parents = np.clip(parents, lower, upper)
    n, d = parents.shape
    pairs = n // 2
    p1 = parents[0 : 2 * pairs : 2]
    p2 = parents[1 : 2 * pairs : 2]

    mu = rng.random((pairs, d))
    beta = np.where(
        mu <= 0.5,
        (2 * mu) ** (1 / (dis_c + 1)),
        (2 - 2 * mu) ** (-1 / (dis_c + 1)),
    )
    beta[rng.random((pairs, d)) < 0.5] *= -1
    beta[rng.random((pairs, d)) < 0.5] = 1
    beta[rng.random(pairs) > pro_c] = 1

    mean = (p1 + p2) / 2
    diff = (p1 - p2) / 2
    # Variables with beta == 1 are inert; copy them exactly so that disabled
    # crossover reproduces the parents bit for bit.
    inert = beta == 1
    c1 = np.where(inert, p1, mean + beta * diff)
    c2 = np.where(inert, p2, mean - beta * diff)

    offspring = np.empty((n, d))
    offspring[0 : 2 * pairs : 2] = c1
    offspring[1 : 2 * pairs : 2] = c2
    if n % 2:
        offspring[-1] = parents[-1]
    return polynomial_mutation(offspring, lower, upper, pro_m, dis_m, rng)


def ea_binary(parents_dec, pro_c, pro_m, rng):
    """Single-point crossover plus bitwise mutation on 0/1 matrices.

    Crossover engages per pair with probability ``pro_c`` and the cut point
    is uniform in 1..D-1 (skipped entirely when D < 2); every bit then flips
    with probability ``pro_m / D``.
    """
    parents = np.asarray(parents_dec)
    if parents.ndim != 2 or parents.shape[0] < 2:
        raise ValueError("ea_binary needs at least two parents")
    n, d = parents.shape
    offspring = parents.astype(float).copy()
    pairs = n // 2
    if d >= 2:
        for k in range(pairs):
            if rng.random() < pro_c:
                cut = int(rng.integers(1, d))
                a, b = 2 * k, 2 * k + 1
                tail = offspring[a, cut:].copy()
                offspring[a, cut:] = offspring[b, cut:]
                offspring[b, cut:] = tail
    flip = rng.random((n, d)) < pro_m / d
    offspring[flip] = 1 - offspring[flip]
    return offspring


def de_variation(x1, x2, x3, lower, upper, cr, f, pro_m, dis_m, rng):
    """One DE/rand/1/bin trial vector, then polynomial mutation.

    ``v_j = x1_j + f * (x2_j - x3_j)`` is taken per variable with
    probability ``cr`` (one uniformly drawn variable is always forced),
    otherwise ``x1_j`` is kept.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    x3 = np.asarray(x3, dtype=float)
    d = x1.shape[0]
    site = rng.random(d) < cr
    site[int(rng.integers(d))] = True
    trial = np.where(site, x1 + f * (x2 - x3), x1)
    mutated = polynomial_mutation(trial[None, :], lower, upper, pro_m, dis_m, rng)
    return mutated[0]


@register(
    "operator",
    "EAreal",
    description="Simulated binary crossover with polynomial mutation (real coding)",
    labels=("operator", "real"),
    encoding="real",
    params=[
        ("proC", 1.0, "crossover probability per parent pair"),
        ("disC", 15.0, "distribution index of simulated binary crossover"),
        ("proM", 1.0, "expected number of mutated variables per child"),
        ("disM", 15.0, "distribution index of polynomial mutation"),
    ],
)
def _ea_real_operator(parents_dec, lower, upper, params, rng):
    pro_c, dis_c, pro_m, dis_m = params
    return ea_real(parents_dec, lower, upper, pro_c, dis_c, pro_m, dis_m, rng)


@register(
    "operator",
    "EAbinary",
    description="Single-point crossover with bitwise mutation (binary coding)",
    labels=("operator", "binary"),
    encoding="binary",
    params=[
        ("proC", 1.0, "crossover probability per parent pair"),
        ("proM", 1.0, "expected number of flipped bits per child"),
    ],
)
def _ea_binary_operator(parents_dec, lower, upper, params, rng):
    pro_c, pro_m = params
    return ea_binary(parents_dec, pro_c, pro_m, rng)


@register(
    "operator",
    "DE",
    description="Differential evolution variation with polynomial mutation",
    labels=("operator", "real"),
    encoding="real",
    params=[
        ("CR", 1.0, "crossover rate per variable"),
        ("F", 0.5, "difference-vector scaling factor"),
        ("proM", 1.0, "expected number of mutated variables per child"),
        ("disM", 20.0, "distribution index of polynomial mutation"),
    ],
)
def _de_operator(parents_dec, lower, upper, params, rng):
    # Parents arrive stacked as three equal blocks (base, a, b); a remainder
    # that does not fill a triple is dropped.
    cr, f, pro_m, dis_m = params
    parents = np.asarray(parents_dec, dtype=float)
    k = parents.shape[0] // 3
    if k == 0:
        raise ValueError("DE needs at least three parents")
    x1, x2, x3 = parents[:k], parents[k : 2 * k], parents[2 * k : 3 * k]
    return np.stack(
        [
            de_variation(x1[i], x2[i], x3[i], lower, upper, cr, f, pro_m, dis_m, rng)
            for i in range(k)
        ]
    )
