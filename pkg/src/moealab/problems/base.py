"""The three-operation problem protocol: init, evaluate, front sampling.

A registered problem is a factory ``(m, d) -> ProblemDefinition``; the
definition carries the finalized dimensions, bounds, encoding and default
operator, plus the two callable behaviors (batch evaluation and Pareto-front
sampling).  Random decision generation lives here since it only depends on
bounds and encoding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import registry
from ..errors import ConfigurationError


@dataclass(frozen=True)
class ProblemDefinition:
    name: str
    m: int
    d: int
    lower: np.ndarray
    upper: np.ndarray
    evaluator: Callable
    pf_sampler: Callable
    encoding: str = "real"
    default_operator: str = "EAreal"

    def random_decisions(self, size: int, rng) -> np.ndarray:
        if size < 0:
            raise ValueError("size must be non-negative")
        if self.encoding == "binary":
            return (rng.random((size, self.d)) < 0.5).astype(float)
        span = self.upper - self.lower
        return self.lower + rng.random((size, self.d)) * span

    def evaluate(self, dec_matrix) -> tuple[np.ndarray, np.ndarray]:
        """Objective and constraint matrices for a batch of decision rows."""
        dec = np.asarray(dec_matrix, dtype=float)
        if dec.ndim != 2 or dec.shape[1] != self.d:
            raise ValueError(
                f"{self.name} expects decision rows of length {self.d}, "
                f"got shape {dec.shape}"
            )
        obj, con = self.evaluator(dec)
        obj = np.asarray(obj, dtype=float)
        if obj.shape != (dec.shape[0], self.m):
            raise ValueError(
                f"{self.name} evaluator returned shape {obj.shape}, "
                f"expected {(dec.shape[0], self.m)}"
            )
        con = np.asarray(con, dtype=float).reshape(dec.shape[0], -1)
        return obj, con

    def sample_pf(self, count: int) -> np.ndarray:
        """Reference points on the true Pareto front.

        The returned row count may differ from ``count`` for structured sets
        (lattices, filtered grids) but is at least ``min(count, achievable)``.
        """
        if count < 1:
            raise ValueError("count must be positive")
        points = np.asarray(self.pf_sampler(count), dtype=float)
        return points


def problem_init(name: str, m: int | None = None, d: int | None = None) -> ProblemDefinition:
    """Instantiate a registered problem, applying its M/D defaulting rules."""
    info = registry.get("problem", name)
    return info.func(m, d)


def thin_rows(points: np.ndarray, count: int) -> np.ndarray:
    """Evenly thin ``points`` down to about ``count`` rows, keeping ends."""
    n = len(points)
    if n <= count:
        return points
    idx = np.unique(np.round(np.linspace(0, n - 1, count)).astype(int))
    return points[idx]


def check_zdt_dims(name: str, m, d, default_d: int) -> tuple[int, int]:
    if m not in (None, 2):
        raise ConfigurationError(f"{name} is a two-objective problem, got M={m}")
    d = default_d if d is None else int(d)
    if d < 2:
        raise ConfigurationError(f"{name} needs D >= 2, got D={d}")
    return 2, d


def check_dtlz_dims(name: str, m, d, extra: int) -> tuple[int, int]:
    m = 3 if m is None else int(m)
    if m < 2:
        raise ConfigurationError(f"{name} needs M >= 2, got M={m}")
    d = m + extra if d is None else int(d)
    if d < m:
        raise ConfigurationError(f"{name} needs D >= M, got M={m}, D={d}")
    return m, d
