"""The generic run loop: seeded randomness, the counted individual factory,
FE-budget termination with per-generation snapshots, and positional
parameter resolution for registered functions.

Algorithms, problems and operators never call each other directly; a
:class:`Run` wires them together by name through the registry, so each side
can be swapped or stubbed independently.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .. import registry
from ..errors import BudgetExhaustedError, ConfigurationError
from ..problems.base import problem_init
from .config import RunConfig
from .individual import EvaluationLedger, Individual, decisions_of, objectives_of

#: Generator used everywhere; counter-based so that parallel experiment
#: cells with derived seeds cannot share state.
def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.uint64(seed & (2**64 - 1))))


@dataclass(frozen=True)
class Snapshot:
    generation: int
    evaluations: int
    population: tuple[Individual, ...]


@dataclass
class RunResult:
    config: RunConfig
    seed: int
    snapshots: list[Snapshot]
    final_population: tuple[Individual, ...]
    elapsed_seconds: float | None = None
    # auxiliary algorithm series (not part of the serialized schema)
    trace: dict = field(default_factory=dict)


class Run:
    """Owns the state of one optimization run.

    The constructor resolves the configured problem and operator, finalizes
    (freezes) the configuration, and seeds the run's private generator.
    """

    def __init__(self, config: RunConfig, observer: Callable[[Snapshot], None] | None = None):
        self.config = config
        self.problem = problem_init(config.problem, config.m, config.d)
        operator_name = config.operator or self._default_operator()
        self.operator_info = registry.get("operator", operator_name)
        if self.operator_info.encoding != self.problem.encoding:
            raise ConfigurationError(
                f"operator {self.operator_info.name} handles "
                f"{self.operator_info.encoding} encoding but problem "
                f"{self.problem.name} uses {self.problem.encoding}"
            )
        if not config.frozen:
            config.finalize(self.problem, self.operator_info.name)
        self.rng = make_rng(config.seed)
        self.ledger = EvaluationLedger(budget=config.max_evaluations)
        self.snapshots: list[Snapshot] = []
        self.final_population: tuple[Individual, ...] | None = None
        # algorithm-owned auxiliary series (e.g. ideal-point history);
        # observable by tests and the UI, never serialized
        self.trace: dict[str, list] = {}
        self._generation = 0
        self._observer = observer

    def _default_operator(self) -> str:
        algo = registry.get("algorithm", self.config.algorithm)
        return algo.default_operator or self.problem.default_operator

    # -- the individual factory -------------------------------------------------

    def initialization(self, size: int | None = None) -> list[Individual]:
        """Random evaluated population of ``size`` (defaults to N)."""
        size = self.config.n if size is None else size
        if size < 0:
            raise ValueError("size must be non-negative")
        if self.ledger.exhausted:
            raise BudgetExhaustedError(
                f"budget {self.ledger.budget} already consumed before initialization"
            )
        dec = self.problem.random_decisions(size, self.rng)
        return self.spawn_individuals(dec)

    def spawn_individuals(self, decision_matrix, add: dict | None = None) -> list[Individual]:
        """Evaluate decision rows into individuals; charges the ledger."""
        dec = np.asarray(decision_matrix, dtype=float)
        if dec.size == 0:
            return []
        obj, con = self.problem.evaluate(dec)
        self.ledger.charge(dec.shape[0])
        extras = add or {}
        return [
            Individual(
                dec=dec[i],
                obj=obj[i],
                con=con[i],
                add={key: val[i] for key, val in extras.items()},
            )
            for i in range(dec.shape[0])
        ]

    # -- loop control -----------------------------------------------------------

    def not_terminated(self, population: Sequence[Individual]) -> bool:
        """True while budget remains; records a snapshot either way."""
        alive = self.ledger.consumed < self.ledger.budget
        stride = self.config.snapshot_stride
        if self._generation % stride == 0 or not alive:
            snap = Snapshot(
                generation=self._generation,
                evaluations=self.ledger.consumed,
                population=tuple(population),
            )
            self.snapshots.append(snap)
            if self._observer is not None:
                self._observer(snap)
        self._generation += 1
        if not alive:
            self.final_population = tuple(population)
        return alive

    def variation(self, parents: Sequence[Individual], count: int | None = None) -> list[Individual]:
        """Offspring via the configured operator; evaluated and counted."""
        if len(parents) == 0:
            raise ValueError("variation needs at least one parent")
        params = self.parameter_set(
            self.operator_info.name,
            tuple(p.default for p in self.operator_info.params),
        )
        offspring_dec = self.operator_info.func(
            decisions_of(parents),
            self.problem.lower,
            self.problem.upper,
            params,
            self.rng,
        )
        if count is not None:
            offspring_dec = offspring_dec[:count]
        return self.spawn_individuals(offspring_dec)

    def parameter_set(self, function_name: str, defaults: Sequence[float]) -> tuple[float, ...]:
        """User-supplied values for ``function_name``, positionally over defaults."""
        supplied = self.config.params_for(function_name)
        if supplied is None:
            return tuple(defaults)
        if len(supplied) > len(defaults):
            raise ConfigurationError(
                f"{function_name} takes at most {len(defaults)} parameters, "
                f"got {len(supplied)}"
            )
        return tuple(supplied) + tuple(defaults[len(supplied):])

    # -- result assembly ----------------------------------------------------------

    def result(self, elapsed_seconds: float | None = None) -> RunResult:
        if self.final_population is None:
            raise RuntimeError("run has not terminated; no final population")
        return RunResult(
            config=self.config,
            seed=self.config.seed,
            snapshots=list(self.snapshots),
            final_population=self.final_population,
            elapsed_seconds=elapsed_seconds,
            trace=dict(self.trace),
        )


def execute(config: RunConfig, observer: Callable[[Snapshot], None] | None = None) -> RunResult:
    """Resolve the configured algorithm, run it to termination, time it."""
    algo = registry.get("algorithm", config.algorithm)
    run = Run(config, observer=observer)
    start = time.perf_counter()
    algo.func(run)
    elapsed = time.perf_counter() - start
    return run.result(elapsed_seconds=elapsed)
