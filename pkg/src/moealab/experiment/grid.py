"""The experiment grid: (algorithm x problem-setting x run) cells.

Every cell is an independent kernel run with a seed derived by hashing the
base seed and the cell coordinates, so the full result set is a pure
function of the spec and cells can execute in any order or in parallel.
Results persist incrementally; a killed experiment resumes by skipping
cells whose result file already exists.
"""
from __future__ import annotations

import hashlib
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import ConfigurationError, SchemaError
from ..kernel.config import RunConfig, RunMode
from ..kernel.run import RunResult, execute
from ..problems.base import problem_init
from .resultio import load_result, save_result

SPEC_HEADER = "#moealab-experiment v1"


@dataclass(frozen=True)
class ProblemSetting:
    problem: str
    m: int | None = None
    d: int | None = None
    n: int = 100
    max_evaluations: int = 10000

    def resolved(self) -> "ProblemSetting":
        """Fill M and D with the problem's defaults so labels are concrete."""
        definition = problem_init(self.problem, self.m, self.d)
        return replace(self, m=definition.m, d=definition.d)

    @property
    def label(self) -> str:
        return f"{self.problem}_M{self.m}_D{self.d}"


@dataclass(frozen=True)
class AlgorithmSetting:
    algorithm: str
    operator: str | None = None
    function_params: tuple[tuple[str, tuple[float, ...]], ...] = ()
    label: str = ""

    @staticmethod
    def make(algorithm, operator=None, function_params=None, label=""):
        params = tuple(
            (name, tuple(float(v) for v in values))
            for name, values in sorted((function_params or {}).items())
        )
        return AlgorithmSetting(algorithm, operator, params, label or algorithm)

    @property
    def params_dict(self) -> dict[str, tuple[float, ...]]:
        return dict(self.function_params)


@dataclass
class ExperimentSpec:
    algorithms: list[AlgorithmSetting]
    settings: list[ProblemSetting]
    runs: int = 1
    indicators: list[str] = field(default_factory=lambda: ["IGD"])
    folder: str = "results"
    parallelism: int = 1
    base_seed: int = 1
    pf_size: int = 10000
    alpha: float = 0.05
    indicator_params: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigurationError("runs must be at least 1")
        if self.parallelism < 1:
            raise ConfigurationError("parallelism must be at least 1")
        self.settings = [s.resolved() for s in self.settings]
        labels = [a.label for a in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ConfigurationError(f"duplicate algorithm labels: {labels}")

    def cells(self):
        for algorithm in self.algorithms:
            for setting in self.settings:
                for run_index in range(1, self.runs + 1):
                    yield algorithm, setting, run_index


def cell_seed(base_seed: int, algorithm_label: str, setting_label: str, run_index: int) -> int:
    key = f"{base_seed}|{algorithm_label}|{setting_label}|{run_index}".encode()
    digest = hashlib.sha256(key).digest()
    return int.from_bytes(digest[:8], "big") & (2**63 - 1)


def cell_config(algorithm: AlgorithmSetting, setting: ProblemSetting,
                run_index: int, seed: int) -> RunConfig:
    return RunConfig(
        algorithm=algorithm.algorithm,
        problem=setting.problem,
        operator=algorithm.operator,
        n=setting.n,
        m=setting.m,
        d=setting.d,
        max_evaluations=setting.max_evaluations,
        run_no=run_index,
        mode=RunMode.SAVE,
        seed=seed,
        function_params=algorithm.params_dict,
    )


def _execute_cell(folder: str, algorithm: AlgorithmSetting, setting: ProblemSetting,
                  run_index: int, seed: int) -> str:
    config = cell_config(algorithm, setting, run_index, seed)
    result = execute(config)
    path = ResultStore.path_for(folder, algorithm.label, setting, run_index)
    save_result(result, path)
    return str(path)


@dataclass
class CellFailure:
    algorithm: str
    setting: str
    run_index: int
    error: str


class ResultStore:
    """Per-cell result files under ``folder`` plus lazy loading."""

    def __init__(self, spec: ExperimentSpec):
        self.spec = spec
        self.folder = Path(spec.folder)
        self.failures: list[CellFailure] = []

    @staticmethod
    def path_for(folder, algorithm_label: str, setting: ProblemSetting, run_index: int) -> Path:
        return (
            Path(folder)
            / algorithm_label
            / f"{setting.problem}_M{setting.m}_D{setting.d}_R{run_index}.result"
        )

    def cell_path(self, algorithm: AlgorithmSetting, setting: ProblemSetting, run_index: int) -> Path:
        return self.path_for(self.folder, algorithm.label, setting, run_index)

    def load(self, algorithm: AlgorithmSetting, setting: ProblemSetting,
             run_index: int) -> RunResult | None:
        path = self.cell_path(algorithm, setting, run_index)
        if not path.exists():
            return None
        return load_result(path)

    def completed_cells(self) -> int:
        return sum(
            1 for algorithm, setting, run in self.spec.cells()
            if self.cell_path(algorithm, setting, run).exists()
        )

    def total_cells(self) -> int:
        return len(self.spec.algorithms) * len(self.spec.settings) * self.spec.runs


def run_experiment(spec: ExperimentSpec, progress=None) -> ResultStore:
    """Execute all missing grid cells, resuming from existing files."""
    store = ResultStore(spec)
    store.folder.mkdir(parents=True, exist_ok=True)

    jobs = []
    seeds = {}
    for algorithm, setting, run_index in spec.cells():
        seed = cell_seed(spec.base_seed, algorithm.label, setting.label, run_index)
        key = (algorithm.label, setting.label, run_index)
        if seed in seeds.values():
            raise ConfigurationError(f"cell seed collision at {key}")
        seeds[key] = seed
        jobs.append((algorithm, setting, run_index, seed))

    total = len(jobs)
    done = 0

    def report():
        if progress is not None:
            progress(done, total)

    pending = []
    for algorithm, setting, run_index, seed in jobs:
        if store.cell_path(algorithm, setting, run_index).exists():
            done += 1
        else:
            pending.append((algorithm, setting, run_index, seed))
    report()

    def record_failure(job, error):
        algorithm, setting, run_index, _ = job
        failure = CellFailure(algorithm.label, setting.label, run_index, error)
        store.failures.append(failure)
        marker = store.cell_path(algorithm, setting, run_index).with_suffix(".error")
        marker.parent.mkdir(parents=True, exist_ok=True)
        marker.write_text(error + "\n", encoding="utf-8")

    if spec.parallelism == 1:
        for job in pending:
            try:
                _execute_cell(str(store.folder), *job)
            except Exception as exc:  # cell failure: record, keep going
                record_failure(job, f"{type(exc).__name__}: {exc}")
            done += 1
            report()
    else:
        with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
            futures = {
                pool.submit(_execute_cell, str(store.folder), *job): job
                for job in pending
            }
            outstanding = set(futures)
            while outstanding:
                finished, outstanding = wait(outstanding, return_when=FIRST_COMPLETED)
                for future in finished:
                    try:
                        future.result()
                    except Exception as exc:
                        record_failure(futures[future], f"{type(exc).__name__}: {exc}")
                    done += 1
                    report()
    return store


# -- spec files ----------------------------------------------------------------


def _parse_kv(tokens: list[str], context: str):
    pairs = {}
    for token in tokens:
        if "=" not in token:
            raise SchemaError(f"expected key=value in {context}, got {token!r}")
        key, value = token.split("=", 1)
        pairs[key] = value
    return pairs


def parse_spec_text(text: str) -> ExperimentSpec:
    lines = [ln.strip() for ln in text.split("\n")]
    if not lines or lines[0] != SPEC_HEADER:
        raise SchemaError(f"experiment spec must start with {SPEC_HEADER!r}")
    algorithms: list[AlgorithmSetting] = []
    settings: list[ProblemSetting] = []
    fields: dict = {}
    indicators: list[str] = []
    indicator_params: dict[str, tuple[float, ...]] = {}
    for raw in lines[1:]:
        if not raw or raw.startswith("#"):
            continue
        head, *rest = raw.split()
        if head == "algorithm":
            name = rest[0]
            pairs = _parse_kv(rest[1:], f"algorithm {name}")
            operator = pairs.pop("operator", None)
            label = pairs.pop("label", "")
            params = {
                key: tuple(float(v) for v in value.split(","))
                for key, value in pairs.items()
            }
            algorithms.append(AlgorithmSetting.make(name, operator, params, label))
        elif head == "problem":
            name = rest[0]
            pairs = _parse_kv(rest[1:], f"problem {name}")
            settings.append(
                ProblemSetting(
                    problem=name,
                    m=int(pairs["M"]) if "M" in pairs else None,
                    d=int(pairs["D"]) if "D" in pairs else None,
                    n=int(pairs.get("N", 100)),
                    max_evaluations=int(pairs.get("FE", 10000)),
                )
            )
        elif head == "indicator":
            indicators.append(rest[0])
            if len(rest) > 1:
                indicator_params[rest[0]] = tuple(float(v) for v in rest[1:])
        elif head in ("runs", "parallelism", "base_seed", "pf_size"):
            fields[head] = int(rest[0])
        elif head == "alpha":
            fields[head] = float(rest[0])
        elif head == "folder":
            fields[head] = rest[0]
        else:
            raise SchemaError(f"unknown experiment spec directive {head!r}")
    if not algorithms or not settings:
        raise SchemaError("experiment spec needs at least one algorithm and one problem")
    return ExperimentSpec(
        algorithms=algorithms,
        settings=settings,
        indicators=indicators or ["IGD"],
        indicator_params=indicator_params,
        **fields,
    )


def parse_spec_file(path) -> ExperimentSpec:
    return parse_spec_text(Path(path).read_text(encoding="utf-8"))
