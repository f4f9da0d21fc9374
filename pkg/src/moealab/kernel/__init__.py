"""Run kernel: configuration, individuals, ledger and the generic loop."""
from .config import RunConfig, RunMode
from .individual import (
    EvaluationLedger,
    Individual,
    constraints_of,
    decisions_of,
    objectives_of,
)
from .run import Run, RunResult, Snapshot, execute, make_rng

__all__ = [
    "RunConfig",
    "RunMode",
    "EvaluationLedger",
    "Individual",
    "Run",
    "RunResult",
    "Snapshot",
    "execute",
    "make_rng",
    "objectives_of",
    "decisions_of",
    "constraints_of",
]
