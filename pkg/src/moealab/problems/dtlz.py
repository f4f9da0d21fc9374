"""The scalable DTLZ benchmark suite (DTLZ1-DTLZ7)."""
from __future__ import annotations

import numpy as np

from ..nds import nd_sort
from ..registry import register
from .base import ProblemDefinition, check_dtlz_dims, thin_rows
from .weights import smallest_lattice


def _dtlz(name, m, d, evaluator, pf_sampler):
    return ProblemDefinition(
        name=name, m=m, d=d,
        lower=np.zeros(d), upper=np.ones(d),
        evaluator=evaluator, pf_sampler=pf_sampler,
    )


def _no_con(obj):
    return obj, np.empty((obj.shape[0], 0))


def _g_rastrigin(tail):
    k = tail.shape[1]
    return 100 * (k + np.sum((tail - 0.5) ** 2 - np.cos(20 * np.pi * (tail - 0.5)), axis=1))


def _g_sphere(tail):
    return np.sum((tail - 0.5) ** 2, axis=1)


def _linear_objectives(pos, g):
    """DTLZ1-style products: f_j = 0.5 (1+g) x_1..x_{M-j} (1-x_{M-j+1})."""
    n, m_minus_1 = pos.shape
    m = m_minus_1 + 1
    obj = np.empty((n, m))
    cum = np.cumprod(np.hstack([np.ones((n, 1)), pos]), axis=1)  # cum[:, i] = prod of first i
    for j in range(m):
        head = cum[:, m - 1 - j]
        tail = (1 - pos[:, m - 1 - j]) if j > 0 else 1.0
        obj[:, j] = 0.5 * (1 + g) * head * tail
    return obj


def _spherical_objectives(theta, g):
    """DTLZ2-style products of cosines with one trailing sine per objective."""
    n, m_minus_1 = theta.shape
    m = m_minus_1 + 1
    cos = np.cos(theta)
    sin = np.sin(theta)
    obj = np.empty((n, m))
    cum = np.cumprod(np.hstack([np.ones((n, 1)), cos]), axis=1)
    for j in range(m):
        head = cum[:, m - 1 - j]
        tail = sin[:, m - 1 - j] if j > 0 else 1.0
        obj[:, j] = (1 + g) * head * tail
    return obj


def _simplex_front(m, count):
    points, _ = smallest_lattice(m, count)
    return 0.5 * points


def _sphere_front(m, count):
    points, _ = smallest_lattice(m, count)
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def _degenerate_curve(m, count):
    """The DTLZ5/6 front: a one-parameter arc embedded in M dimensions."""
    t = np.linspace(0.0, np.pi / 2, count)
    x, y = np.cos(t), np.sin(t)
    cols = [x] * (m - 1) + [y]
    exponents = [m - 2] + list(range(m - 2, -1, -1))
    scale = np.sqrt(2.0) ** np.array(exponents)
    return np.column_stack(cols) / scale


def _dtlz7_last_objective(pos, g):
    h = pos.shape[1] + 1 - np.sum(pos / (1 + g[:, None]) * (1 + np.sin(3 * np.pi * pos)), axis=1)
    return (1 + g) * h


def _dtlz7_front(m, count):
    # Grid the first M-1 objectives, attach the analytic last objective at
    # g = 1, and keep the non-dominated subset of the (disconnected) surface.
    per_dim = max(2, int(np.ceil((10 * count) ** (1 / (m - 1)))))
    axes = np.meshgrid(*[np.linspace(0.0, 1.0, per_dim)] * (m - 1), indexing="ij")
    pos = np.column_stack([a.ravel() for a in axes])
    g = np.ones(len(pos))
    points = np.column_stack([pos, _dtlz7_last_objective(pos, g)])
    keep = nd_sort(points, 1).front_no == 1
    return thin_rows(points[keep], count)


def _register_dtlz(name, extra, description, make_eval, make_front):
    @register("problem", name, description=description,
              labels=("problem", "multi-objective", "scalable"))
    def factory(m, d, _name=name, _extra=extra):
        m, d = check_dtlz_dims(_name, m, d, _extra)
        return _dtlz(_name, m, d, make_eval(m, d), lambda count: make_front(m, count))

    return factory


def _dtlz1_eval(m, d):
    def evaluate(x):
        g = _g_rastrigin(x[:, m - 1:])
        return _no_con(_linear_objectives(x[:, : m - 1], g))

    return evaluate


def _dtlz2_eval(m, d):
    def evaluate(x):
        g = _g_sphere(x[:, m - 1:])
        return _no_con(_spherical_objectives(x[:, : m - 1] * np.pi / 2, g))

    return evaluate


def _dtlz3_eval(m, d):
    def evaluate(x):
        g = _g_rastrigin(x[:, m - 1:])
        return _no_con(_spherical_objectives(x[:, : m - 1] * np.pi / 2, g))

    return evaluate


def _dtlz4_eval(m, d, alpha=100.0):
    def evaluate(x):
        g = _g_sphere(x[:, m - 1:])
        return _no_con(_spherical_objectives(x[:, : m - 1] ** alpha * np.pi / 2, g))

    return evaluate


def _bent_angles(pos, g):
    """DTLZ5/6 reparameterization: trailing angles collapse toward pi/4."""
    theta = np.empty_like(pos)
    theta[:, 0] = pos[:, 0] * np.pi / 2
    if pos.shape[1] > 1:
        theta[:, 1:] = np.pi / (4 * (1 + g[:, None])) * (1 + 2 * g[:, None] * pos[:, 1:])
    return theta


def _dtlz5_eval(m, d):
    def evaluate(x):
        g = _g_sphere(x[:, m - 1:])
        return _no_con(_spherical_objectives(_bent_angles(x[:, : m - 1], g), g))

    return evaluate


def _dtlz6_eval(m, d):
    def evaluate(x):
        g = np.sum(x[:, m - 1:] ** 0.1, axis=1)
        return _no_con(_spherical_objectives(_bent_angles(x[:, : m - 1], g), g))

    return evaluate


def _dtlz7_eval(m, d):
    def evaluate(x):
        k = d - m + 1
        g = 1 + 9 / k * np.sum(x[:, m - 1:], axis=1)
        pos = x[:, : m - 1]
        return _no_con(np.column_stack([pos, _dtlz7_last_objective(pos, g)]))

    return evaluate


_register_dtlz("DTLZ1", 4, "DTLZ1: linear simplex front, multimodal distance function",
               _dtlz1_eval, _simplex_front)
_register_dtlz("DTLZ2", 9, "DTLZ2: concave spherical front",
               _dtlz2_eval, _sphere_front)
_register_dtlz("DTLZ3", 9, "DTLZ3: spherical front, multimodal distance function",
               _dtlz3_eval, _sphere_front)
_register_dtlz("DTLZ4", 9, "DTLZ4: spherical front with biased density",
               _dtlz4_eval, _sphere_front)
_register_dtlz("DTLZ5", 9, "DTLZ5: degenerate curve front",
               _dtlz5_eval, _degenerate_curve)
_register_dtlz("DTLZ6", 9, "DTLZ6: degenerate curve front, biased distance function",
               _dtlz6_eval, _degenerate_curve)
_register_dtlz("DTLZ7", 19, "DTLZ7: disconnected mixed front",
               _dtlz7_eval, _dtlz7_front)
