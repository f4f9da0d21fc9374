"""Evaluated individuals and the evaluation ledger."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Individual:
    """Decision, objective and constraint vectors, fixed at creation.

    ``add`` carries auxiliary per-individual data for operators that need it
    (e.g. velocities); it is exposed read-only like everything else.
    """

    dec: np.ndarray
    obj: np.ndarray
    con: np.ndarray
    add: Mapping[str, np.ndarray] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "dec", _frozen_array(self.dec))
        object.__setattr__(self, "obj", _frozen_array(self.obj))
        object.__setattr__(self, "con", _frozen_array(self.con))
        frozen_add = MappingProxyType(
            {key: _frozen_array(val) for key, val in dict(self.add).items()}
        )
        object.__setattr__(self, "add", frozen_add)


def objectives_of(population) -> np.ndarray:
    return np.array([ind.obj for ind in population])


def decisions_of(population) -> np.ndarray:
    return np.array([ind.dec for ind in population])


def constraints_of(population) -> np.ndarray:
    rows = [ind.con for ind in population]
    width = max((len(r) for r in rows), default=0)
    if width == 0:
        return np.empty((len(rows), 0))
    return np.array(rows)


@dataclass
class EvaluationLedger:
    """Counts instantiated individuals against the evaluation budget."""

    budget: int
    consumed: int = 0

    def charge(self, count: int) -> None:
        if count < 0:
            raise ValueError("cannot charge a negative evaluation count")
        self.consumed += count

    @property
    def exhausted(self) -> bool:
        return self.consumed >= self.budget
