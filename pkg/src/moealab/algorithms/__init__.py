"""Bundled multi-objective evolutionary algorithms."""
from ..kernel.config import RunConfig
from ..kernel.run import RunResult, execute

from . import ibea, moead, nsga2, nsga3, spea2  # noqa: F401  (registrations)
from .common import crowding_distance, ranked_fronts, tournament_select
from .ibea import epsilon_fitness
from .moead import tchebycheff
from .nsga3 import nsga3_normalize_associate
from .spea2 import spea2_fitness


def run_algorithm(name: str, config: RunConfig, observer=None) -> RunResult:
    """Run the named algorithm under ``config`` until budget exhaustion."""
    if config.algorithm.lower() != name.lower():
        raise ValueError(
            f"config names algorithm {config.algorithm!r}, asked to run {name!r}"
        )
    return execute(config, observer=observer)


__all__ = [
    "run_algorithm",
    "crowding_distance",
    "tournament_select",
    "ranked_fronts",
    "spea2_fitness",
    "tchebycheff",
    "epsilon_fitness",
    "nsga3_normalize_associate",
]
