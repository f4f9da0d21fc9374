"""Line-delimited structured-text persistence for run results.

The schema is canonical: a given RunResult always serializes to the same
bytes, so determinism checks can compare files directly.  Floats are written
with ``repr`` (shortest round-tripping form).  Wall-clock metadata is
deliberately excluded so repeated runs with one seed stay byte-identical.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import SchemaError
from ..kernel.config import RunConfig, RunMode
from ..kernel.individual import (
    Individual,
    constraints_of,
    decisions_of,
    objectives_of,
)
from ..kernel.run import RunResult, Snapshot

SCHEMA_HEADER = "#moealab-result v1"


def _fmt(x: float) -> str:
    return repr(float(x))


def _matrix_lines(tag: str, matrix: np.ndarray) -> list[str]:
    rows, cols = matrix.shape
    lines = [f"{tag} {rows} {cols}"]
    if cols == 0:
        return lines
    for row in matrix:
        lines.append(" ".join(_fmt(v) for v in row))
    return lines


def _population_lines(population, d: int, m: int) -> list[str]:
    population = list(population)
    if population:
        dec = decisions_of(population)
        obj = objectives_of(population)
    else:
        dec = np.empty((0, d))
        obj = np.empty((0, m))
    lines = []
    lines += _matrix_lines("dec", dec)
    lines += _matrix_lines("obj", obj)
    lines += _matrix_lines("con", constraints_of(population))
    return lines


def result_to_text(result: RunResult) -> str:
    cfg = result.config
    lines = [
        SCHEMA_HEADER,
        f"algorithm {cfg.algorithm}",
        f"problem {cfg.problem}",
        f"operator {cfg.operator}",
        f"n {cfg.n}",
        f"m {cfg.m}",
        f"d {cfg.d}",
        f"max_evaluations {cfg.max_evaluations}",
        f"run_no {cfg.run_no}",
        f"mode {int(cfg.mode)}",
        f"seed {result.seed}",
        f"snapshot_stride {cfg.snapshot_stride}",
        f"encoding {cfg.encoding}",
        "lower " + " ".join(_fmt(v) for v in cfg.lower),
        "upper " + " ".join(_fmt(v) for v in cfg.upper),
    ]
    for name in sorted(cfg.function_params):
        values = " ".join(_fmt(v) for v in cfg.function_params[name])
        lines.append(f"param {name} {values}".rstrip())
    lines.append(f"snapshots {len(result.snapshots)}")
    for snap in result.snapshots:
        lines.append(f"snapshot {snap.generation} {snap.evaluations}")
        lines += _population_lines(snap.population, cfg.d, cfg.m)
    lines.append("final")
    lines += _population_lines(result.final_population, cfg.d, cfg.m)
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_result(result: RunResult, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(result_to_text(result), encoding="utf-8")
    return path


class _Reader:
    """Line reader that reports byte offsets in parse errors."""

    def __init__(self, text: str):
        self._lines = text.split("\n")
        self._offsets = []
        pos = 0
        for line in self._lines:
            self._offsets.append(pos)
            pos += len(line.encode("utf-8")) + 1
        self._index = 0

    @property
    def offset(self) -> int:
        idx = min(self._index, len(self._offsets) - 1)
        return self._offsets[idx]

    def next_line(self) -> str:
        while self._index < len(self._lines):
            line = self._lines[self._index]
            self._index += 1
            if line:
                return line
        raise SchemaError(f"unexpected end of file at byte {self.offset}")

    def expect(self, tag: str) -> list[str]:
        line = self.next_line()
        parts = line.split(" ")
        if parts[0] != tag:
            raise SchemaError(
                f"expected {tag!r} but found {parts[0]!r} at byte "
                f"{self._offsets[self._index - 1]}"
            )
        return parts[1:]


def _read_matrix(reader: _Reader, tag: str) -> np.ndarray:
    head = reader.expect(tag)
    if len(head) != 2:
        raise SchemaError(f"malformed {tag} header at byte {reader.offset}")
    rows, cols = int(head[0]), int(head[1])
    data = np.empty((rows, cols))
    if cols == 0:
        return data
    for i in range(rows):
        at = reader.offset
        parts = reader.next_line().split(" ")
        if len(parts) != cols:
            raise SchemaError(f"row of {tag} has {len(parts)} values, expected {cols} at byte {at}")
        data[i] = [float(v) for v in parts]
    return data


def _read_population(reader: _Reader) -> tuple[Individual, ...]:
    dec = _read_matrix(reader, "dec")
    obj = _read_matrix(reader, "obj")
    con = _read_matrix(reader, "con")
    return tuple(
        Individual(dec=dec[i], obj=obj[i], con=con[i]) for i in range(len(dec))
    )


def load_result(path) -> RunResult:
    text = Path(path).read_text(encoding="utf-8")
    reader = _Reader(text)
    header = reader.next_line()
    if header != SCHEMA_HEADER:
        raise SchemaError(
            f"unsupported schema header {header!r} at byte 0; expected {SCHEMA_HEADER!r}"
        )
    fields = {}
    for tag in ("algorithm", "problem", "operator"):
        fields[tag] = reader.expect(tag)[0]
    for tag in ("n", "m", "d", "max_evaluations", "run_no", "mode", "seed", "snapshot_stride"):
        fields[tag] = int(reader.expect(tag)[0])
    fields["encoding"] = reader.expect("encoding")[0]
    lower = np.array([float(v) for v in reader.expect("lower")])
    upper = np.array([float(v) for v in reader.expect("upper")])

    function_params = {}
    while True:
        at = reader.offset
        line = reader.next_line()
        parts = line.split(" ")
        if parts[0] == "param":
            if len(parts) < 2:
                raise SchemaError(f"malformed param line at byte {at}")
            function_params[parts[1]] = tuple(float(v) for v in parts[2:])
            continue
        if parts[0] == "snapshots":
            snapshot_count = int(parts[1])
            break
        raise SchemaError(f"expected 'param' or 'snapshots' at byte {at}")

    config = RunConfig(
        algorithm=fields["algorithm"],
        problem=fields["problem"],
        operator=fields["operator"],
        n=fields["n"],
        m=fields["m"],
        d=fields["d"],
        max_evaluations=fields["max_evaluations"],
        run_no=fields["run_no"],
        mode=RunMode(fields["mode"]),
        seed=fields["seed"],
        snapshot_stride=fields["snapshot_stride"],
        function_params=function_params,
    )
    lower.setflags(write=False)
    upper.setflags(write=False)
    config.lower = lower
    config.upper = upper
    config.encoding = fields["encoding"]
    object.__setattr__(config, "_frozen", True)

    snapshots = []
    for _ in range(snapshot_count):
        head = reader.expect("snapshot")
        if len(head) != 2:
            raise SchemaError(f"malformed snapshot header at byte {reader.offset}")
        generation, evaluations = int(head[0]), int(head[1])
        population = _read_population(reader)
        snapshots.append(
            Snapshot(generation=generation, evaluations=evaluations, population=population)
        )
    reader.expect("final")
    final_population = _read_population(reader)
    reader.expect("end")
    return RunResult(
        config=config, seed=fields["seed"], snapshots=snapshots,
        final_population=final_population, elapsed_seconds=None,
    )


def results_equal(a: RunResult, b: RunResult) -> bool:
    """Structural equality ignoring wall-clock metadata."""
    return result_to_text(a) == result_to_text(b)
