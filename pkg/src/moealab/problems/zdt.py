"""The two-objective ZDT benchmark suite (ZDT1-ZDT4, ZDT6)."""
from __future__ import annotations

import functools

import numpy as np
from scipy import optimize

from ..nds import nd_sort
from ..registry import register
from .base import ProblemDefinition, check_zdt_dims, thin_rows


def _zdt(name, d, evaluator, pf_sampler, lower=0.0, upper=1.0):
    lo = np.full(d, 0.0) if np.isscalar(lower) else np.asarray(lower, dtype=float)
    hi = np.full(d, 1.0) if np.isscalar(upper) else np.asarray(upper, dtype=float)
    if np.isscalar(lower):
        lo = np.full(d, float(lower))
    if np.isscalar(upper):
        hi = np.full(d, float(upper))
    return ProblemDefinition(
        name=name, m=2, d=d, lower=lo, upper=hi,
        evaluator=evaluator, pf_sampler=pf_sampler,
    )


def _no_con(obj):
    return obj, np.empty((obj.shape[0], 0))


def _convex_front(count):
    f1 = np.linspace(0.0, 1.0, count)
    return np.column_stack([f1, 1 - np.sqrt(f1)])


def _concave_front(count, start=0.0):
    f1 = np.linspace(start, 1.0, count)
    return np.column_stack([f1, 1 - f1**2])


@register("problem", "ZDT1", description="ZDT1: convex Pareto front",
          labels=("problem", "multi-objective"))
def _zdt1(m, d):
    m, d = check_zdt_dims("ZDT1", m, d, 30)

    def evaluate(x):
        f1 = x[:, 0]
        g = 1 + 9 * np.sum(x[:, 1:], axis=1) / (d - 1)
        f2 = g * (1 - np.sqrt(f1 / g))
        return _no_con(np.column_stack([f1, f2]))

    return _zdt("ZDT1", d, evaluate, _convex_front)


@register("problem", "ZDT2", description="ZDT2: concave Pareto front",
          labels=("problem", "multi-objective"))
def _zdt2(m, d):
    m, d = check_zdt_dims("ZDT2", m, d, 30)

    def evaluate(x):
        f1 = x[:, 0]
        g = 1 + 9 * np.sum(x[:, 1:], axis=1) / (d - 1)
        f2 = g * (1 - (f1 / g) ** 2)
        return _no_con(np.column_stack([f1, f2]))

    return _zdt("ZDT2", d, evaluate, _concave_front)


def _zdt3_front(count):
    # The analytic curve is only partially non-dominated; sample densely,
    # keep the first front, then thin.
    f1 = np.linspace(0.0, 1.0, 10 * count)
    f2 = 1 - np.sqrt(f1) - f1 * np.sin(10 * np.pi * f1)
    curve = np.column_stack([f1, f2])
    keep = nd_sort(curve, 1).front_no == 1
    return thin_rows(curve[keep], count)


@register("problem", "ZDT3", description="ZDT3: disconnected Pareto front",
          labels=("problem", "multi-objective"))
def _zdt3(m, d):
    m, d = check_zdt_dims("ZDT3", m, d, 30)

    def evaluate(x):
        f1 = x[:, 0]
        g = 1 + 9 * np.sum(x[:, 1:], axis=1) / (d - 1)
        f2 = g * (1 - np.sqrt(f1 / g) - f1 / g * np.sin(10 * np.pi * f1))
        return _no_con(np.column_stack([f1, f2]))

    return _zdt("ZDT3", d, evaluate, _zdt3_front)


@register("problem", "ZDT4", description="ZDT4: multimodal with 21^9 local fronts",
          labels=("problem", "multi-objective"))
def _zdt4(m, d):
    m, d = check_zdt_dims("ZDT4", m, d, 10)

    def evaluate(x):
        f1 = x[:, 0]
        tail = x[:, 1:]
        g = 1 + 10 * (d - 1) + np.sum(tail**2 - 10 * np.cos(4 * np.pi * tail), axis=1)
        f2 = g * (1 - np.sqrt(f1 / g))
        return _no_con(np.column_stack([f1, f2]))

    lower = np.r_[0.0, np.full(d - 1, -5.0)]
    upper = np.r_[1.0, np.full(d - 1, 5.0)]
    return _zdt("ZDT4", d, evaluate, _convex_front, lower, upper)


@functools.lru_cache(maxsize=1)
def _zdt6_f1_min() -> float:
    """Smallest attainable f1 = 1 - exp(-4t) sin^6(6 pi t) over t in [0, 1]."""

    def f1(t):
        return 1 - np.exp(-4 * t) * np.sin(6 * np.pi * t) ** 6

    grid = np.linspace(0.0, 1.0, 100_001)
    best = grid[np.argmin(f1(grid))]
    res = optimize.minimize_scalar(
        f1, bracket=(max(best - 1e-4, 0.0), best, min(best + 1e-4, 1.0)),
        method="brent", options={"xtol": 1e-14},
    )
    return float(f1(res.x))


@register("problem", "ZDT6", description="ZDT6: nonuniform concave Pareto front",
          labels=("problem", "multi-objective"))
def _zdt6(m, d):
    m, d = check_zdt_dims("ZDT6", m, d, 10)

    def evaluate(x):
        f1 = 1 - np.exp(-4 * x[:, 0]) * np.sin(6 * np.pi * x[:, 0]) ** 6
        g = 1 + 9 * (np.sum(x[:, 1:], axis=1) / (d - 1)) ** 0.25
        f2 = g * (1 - (f1 / g) ** 2)
        return _no_con(np.column_stack([f1, f2]))

    def front(count):
        return _concave_front(count, start=_zdt6_f1_min())

    return _zdt("ZDT6", d, evaluate, front)
