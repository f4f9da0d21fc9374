"""Global run configuration: read-only after problem initialization."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError


class RunMode(enum.IntEnum):
    DISPLAY = 1
    SAVE = 2


@dataclass
class RunConfig:
    """Everything a single run needs, shared by all components.

    ``m``, ``d``, ``operator``, ``lower``, ``upper`` and ``encoding`` may be
    left unset; problem initialization fills them with the problem defaults
    and then freezes the whole object.
    """

    algorithm: str = "NSGAII"
    problem: str = "DTLZ2"
    operator: str | None = None
    n: int = 100
    m: int | None = None
    d: int | None = None
    max_evaluations: int = 10000
    run_no: int = 1
    mode: RunMode = RunMode.DISPLAY
    seed: int | None = None
    function_params: dict[str, tuple[float, ...]] = field(default_factory=dict)
    snapshot_stride: int = 1
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    encoding: str | None = None

    def __post_init__(self):
        self.mode = RunMode(self.mode)
        if self.seed is None:
            self.seed = self.run_no
        self.function_params = {
            key: tuple(float(v) for v in values)
            for key, values in self.function_params.items()
        }
        for name in ("n", "max_evaluations", "run_no", "snapshot_stride"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value <= 0:
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
        for name in ("m", "d"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, (int, np.integer)) or value <= 0):
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")

    def finalize(self, problem, operator_name: str) -> None:
        """Fill the problem-owned fields and make the object read-only."""
        self.m = problem.m
        self.d = problem.d
        self.operator = operator_name
        lower = np.asarray(problem.lower, dtype=float).copy()
        upper = np.asarray(problem.upper, dtype=float).copy()
        if lower.shape != (self.d,) or upper.shape != (self.d,):
            raise ConfigurationError("problem bounds do not match D")
        if not np.all(lower < upper):
            raise ConfigurationError("problem bounds require lower < upper")
        lower.setflags(write=False)
        upper.setflags(write=False)
        self.lower = lower
        self.upper = upper
        self.encoding = problem.encoding
        object.__setattr__(self, "_frozen", True)

    @property
    def frozen(self) -> bool:
        return getattr(self, "_frozen", False)

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError(f"RunConfig is read-only after problem init ({name})")
        super().__setattr__(name, value)

    def params_for(self, function_name: str) -> tuple[float, ...] | None:
        for key, values in self.function_params.items():
            if key.lower() == function_name.lower():
                return values
        return None
