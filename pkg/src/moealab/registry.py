"""Name-based registry joining algorithms, problems, operators and indicators.

Every pluggable function self-registers with metadata (labels, a one-line
description, parameter names/defaults/help), so the CLI and the web API can
list and configure them without coupling to their modules.  Lookups are
case-insensitive; the registered spelling is preserved for display.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError

KINDS = ("algorithm", "problem", "operator", "indicator")


@dataclass(frozen=True)
class Parameter:
    """One user-assignable parameter of a registered function."""

    name: str
    default: float
    help: str = ""


@dataclass(frozen=True)
class FunctionInfo:
    name: str
    kind: str
    func: object
    description: str = ""
    labels: tuple[str, ...] = ()
    params: tuple[Parameter, ...] = ()
    encoding: str = ""          # operators: "real" or "binary"
    default_operator: str = ""  # algorithms/problems: preferred operator name
    direction: str = ""         # indicators: "minimize" or "maximize"


_registries: dict[str, dict[str, FunctionInfo]] = {kind: {} for kind in KINDS}


def register(kind: str, name: str, **meta):
    """Decorator registering ``func`` under ``kind``/``name`` with metadata."""
    if kind not in KINDS:
        raise ValueError(f"unknown registry kind {kind!r}")

    def decorator(func):
        key = name.lower()
        if key in _registries[kind]:
            raise ValueError(f"duplicate {kind} registration {name!r}")
        params = tuple(
            p if isinstance(p, Parameter) else Parameter(*p)
            for p in meta.pop("params", ())
        )
        _registries[kind][key] = FunctionInfo(
            name=name, kind=kind, func=func, params=params, **meta
        )
        return func

    return decorator


def get(kind: str, name: str) -> FunctionInfo:
    try:
        return _registries[kind][name.lower()]
    except KeyError:
        known = ", ".join(names(kind))
        raise ConfigurationError(
            f"unknown {kind} {name!r}; registered {kind}s: {known}"
        ) from None


def names(kind: str) -> list[str]:
    return sorted(info.name for info in _registries[kind].values())


def infos(kind: str) -> list[FunctionInfo]:
    return [_registries[kind][key.lower()] for key in names(kind)]
