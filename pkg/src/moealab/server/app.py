"""HTTP API exposing runs and experiments to the browser UI.

JSON documents over a local port; all numeric content the UI shows comes
from here.  Endpoints are read-only over stored results except for the two
submission routes.  Finished runs are backed by result files, so a restarted
server recovers them from the results folder.
"""
from __future__ import annotations

import threading
import time
from pathlib import Path

import numpy as np
from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .. import registry
from ..errors import PlatformError
from ..experiment import (
    AlgorithmSetting,
    ExperimentSpec,
    ProblemSetting,
    aggregate_table,
    cell_text,
    export_table,
    load_result,
    run_experiment,
    save_result,
)
from ..indicators import compute as compute_indicator
from ..kernel import RunConfig, RunMode, execute, objectives_of, decisions_of
from ..problems import problem_init

PF_SNAPSHOT_SIZE = 2000
SNAPSHOT_INDICATORS = ("IGD", "GD", "HV", "Spacing")
DEFAULT_PORT = 8371


class FieldError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field
        self.message = message


def _bad_request(errors: list[FieldError]):
    raise HTTPException(
        status_code=400,
        detail={"errors": [{"field": e.field, "message": e.message} for e in errors]},
    )


class RunRecord:
    def __init__(self, run_id: str, config: RunConfig):
        self.id = run_id
        self.config = config
        self.status = "running"
        self.error: str | None = None
        self.snapshots: list = []
        self.lock = threading.Lock()
        self._pf = None
        self._indicator_cache: dict[tuple[int, str], float] = {}

    def observe(self, snapshot):
        with self.lock:
            self.snapshots.append(snapshot)

    def snapshot_count(self) -> int:
        with self.lock:
            return len(self.snapshots)

    def pf(self):
        if self._pf is None:
            problem = problem_init(self.config.problem, self.config.m, self.config.d)
            self._pf = problem.sample_pf(PF_SNAPSHOT_SIZE)
        return self._pf

    def indicator_at(self, index: int, name: str) -> float:
        key = (index, name)
        if key not in self._indicator_cache:
            with self.lock:
                snapshot = self.snapshots[index]
            obj = objectives_of(snapshot.population)
            params = self.config.params_for(name)
            self._indicator_cache[key] = compute_indicator(
                name, obj, self.pf(), function_params=params
            ).score
        return self._indicator_cache[key]

    def config_doc(self) -> dict:
        cfg = self.config
        return {
            "algorithm": cfg.algorithm,
            "problem": cfg.problem,
            "operator": cfg.operator,
            "n": cfg.n,
            "m": cfg.m,
            "d": cfg.d,
            "max_evaluations": cfg.max_evaluations,
            "run_no": cfg.run_no,
            "seed": cfg.seed,
            "function_params": {k: list(v) for k, v in cfg.function_params.items()},
        }

    def brief(self) -> dict:
        with self.lock:
            generations = len(self.snapshots)
            evaluations = self.snapshots[-1].evaluations if self.snapshots else 0
        return {
            "id": self.id,
            "status": self.status,
            "algorithm": self.config.algorithm,
            "problem": self.config.problem,
            "n": self.config.n,
            "m": self.config.m,
            "generations": generations,
            "evaluations": evaluations,
            "error": self.error,
        }


class ExperimentRecord:
    def __init__(self, experiment_id: str, spec: ExperimentSpec):
        self.id = experiment_id
        self.spec = spec
        self.status = "running"
        self.error: str | None = None
        self.completed = 0
        self.total = (
            len(spec.algorithms) * len(spec.settings) * spec.runs
        )
        self.store = None
        self.lock = threading.Lock()

    def progress(self, done: int, total: int):
        with self.lock:
            self.completed = done
            self.total = total


def _validate_names(doc: dict) -> list[FieldError]:
    errors = []
    for field, kind in (("algorithm", "algorithm"), ("problem", "problem")):
        name = doc.get(field)
        if not name:
            errors.append(FieldError(field, f"{field} is required"))
            continue
        try:
            registry.get(kind, name)
        except PlatformError as exc:
            errors.append(FieldError(field, str(exc)))
    operator = doc.get("operator")
    if operator:
        try:
            registry.get("operator", operator)
        except PlatformError as exc:
            errors.append(FieldError("operator", str(exc)))
    for field in ("n", "m", "d", "max_evaluations", "seed", "run_no"):
        value = doc.get(field)
        if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
            errors.append(FieldError(field, f"{field} must be an integer"))
    return errors


def create_app(results_folder: str = "results", ui_dir: str | None = "frontend/dist") -> FastAPI:
    app = FastAPI(title="moealab server")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    state_lock = threading.Lock()
    runs: dict[str, RunRecord] = {}
    experiments: dict[str, ExperimentRecord] = {}
    counters = {"run": 0, "experiment": 0}
    folder = Path(results_folder)
    runs_folder = folder / "runs"

    def next_id(kind: str) -> str:
        with state_lock:
            counters[kind] += 1
            return f"{kind}-{counters[kind]}"

    def recover_finished_runs():
        if not runs_folder.is_dir():
            return
        for path in sorted(runs_folder.glob("*.result")):
            run_id = path.stem
            try:
                result = load_result(path)
            except PlatformError:
                continue
            record = RunRecord(run_id, result.config)
            record.snapshots = list(result.snapshots)
            record.status = "finished"
            runs[run_id] = record
            with state_lock:
                counters["run"] = max(counters["run"], _trailing_int(run_id))

    def _trailing_int(run_id: str) -> int:
        tail = run_id.rsplit("-", 1)[-1]
        return int(tail) if tail.isdigit() else 0

    recover_finished_runs()

    # -- registry and problems -------------------------------------------------

    @app.get("/api/registry")
    def get_registry():
        doc = {}
        for kind in registry.KINDS:
            doc[kind + "s"] = [
                {
                    "name": info.name,
                    "description": info.description,
                    "labels": list(info.labels),
                    "params": [
                        {"name": p.name, "default": p.default, "help": p.help}
                        for p in info.params
                    ],
                    "default_operator": info.default_operator or None,
                    "encoding": info.encoding or None,
                    "direction": info.direction or None,
                }
                for info in registry.infos(kind)
            ]
        return doc

    @app.get("/api/problems/{name}/pf")
    def get_pf(name: str, m: int | None = None, d: int | None = None, count: int = 1000):
        try:
            problem = problem_init(name, m, d)
            points = problem.sample_pf(count)
        except PlatformError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"problem": problem.name, "m": problem.m, "points": points.tolist()}

    # -- runs --------------------------------------------------------------------

    @app.post("/api/runs", status_code=201)
    def start_run(doc: dict = Body(...)):
        errors = _validate_names(doc)
        if errors:
            _bad_request(errors)
        try:
            config = RunConfig(
                algorithm=doc["algorithm"],
                problem=doc["problem"],
                operator=doc.get("operator"),
                n=doc.get("n", 100),
                m=doc.get("m"),
                d=doc.get("d"),
                max_evaluations=doc.get("max_evaluations", 10000),
                run_no=doc.get("run_no", 1),
                mode=RunMode.SAVE,
                seed=doc.get("seed"),
                snapshot_stride=doc.get("snapshot_stride", 1),
                function_params={
                    k: tuple(v) for k, v in (doc.get("function_params") or {}).items()
                },
            )
        except PlatformError as exc:
            _bad_request([FieldError("config", str(exc))])
        run_id = next_id("run")
        record = RunRecord(run_id, config)
        runs[run_id] = record

        def worker():
            try:
                result = execute(config, observer=record.observe)
                save_result(result, runs_folder / f"{run_id}.result")
                record.status = "finished"
            except Exception as exc:
                record.status = "failed"
                record.error = f"{type(exc).__name__}: {exc}"

        threading.Thread(target=worker, daemon=True).start()
        return {"id": run_id, "status": record.status}

    def _get_run(run_id: str) -> RunRecord:
        record = runs.get(run_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        return record

    @app.get("/api/runs")
    def list_runs():
        return {"runs": [record.brief() for record in runs.values()]}

    @app.get("/api/runs/{run_id}")
    def run_detail(run_id: str):
        record = _get_run(run_id)
        doc = record.brief()
        doc["config"] = record.config_doc()
        return doc

    def _resolve_generation(record: RunRecord, generation: str) -> int:
        count = record.snapshot_count()
        if count == 0:
            raise HTTPException(status_code=409, detail="no snapshots yet")
        if generation == "latest":
            return count - 1
        try:
            index = int(generation)
        except ValueError:
            raise HTTPException(status_code=400, detail="generation must be an integer or 'latest'")
        if not 0 <= index < count:
            raise HTTPException(
                status_code=416,
                detail={"message": "generation out of range", "max_index": count - 1},
            )
        return index

    @app.get("/api/runs/{run_id}/snapshots/{generation}")
    def get_snapshot(run_id: str, generation: str):
        record = _get_run(run_id)
        index = _resolve_generation(record, generation)
        with record.lock:
            snapshot = record.snapshots[index]
        population = list(snapshot.population)
        doc = {
            "run_id": run_id,
            "index": index,
            "generation": snapshot.generation,
            "evaluations": snapshot.evaluations,
            "objectives": objectives_of(population).tolist(),
            "decisions": decisions_of(population).tolist(),
            "indicators": {
                name: record.indicator_at(index, name) for name in SNAPSHOT_INDICATORS
            },
        }
        return doc

    @app.get("/api/runs/{run_id}/trajectory")
    def get_trajectory(run_id: str, indicator: str = "IGD"):
        record = _get_run(run_id)
        try:
            registry.get("indicator", indicator)
        except PlatformError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        count = record.snapshot_count()
        values = [record.indicator_at(i, indicator) for i in range(count)]
        generations = [s.generation for s in record.snapshots[:count]]
        return {"indicator": indicator, "values": values, "generations": generations}

    @app.get("/api/runs/{run_id}/events")
    def run_events(run_id: str, timeout: float = 60.0):
        record = _get_run(run_id)

        def stream():
            sent = 0
            deadline = time.monotonic() + timeout
            while True:
                count = record.snapshot_count()
                while sent < count:
                    yield f"data: {sent}\n\n"
                    sent += 1
                if record.status != "running":
                    yield f"event: status\ndata: {record.status}\n\n"
                    return
                if time.monotonic() > deadline:
                    yield "event: status\ndata: timeout\n\n"
                    return
                time.sleep(0.02)

        return StreamingResponse(stream(), media_type="text/event-stream")

    # -- experiments ---------------------------------------------------------------

    @app.post("/api/experiments", status_code=201)
    def submit_experiment(doc: dict = Body(...)):
        errors = []
        algorithms = doc.get("algorithms") or []
        problems = doc.get("problems") or []
        if not algorithms:
            errors.append(FieldError("algorithms", "at least one algorithm is required"))
        if not problems:
            errors.append(FieldError("problems", "at least one problem is required"))
        for i, entry in enumerate(algorithms):
            try:
                registry.get("algorithm", entry.get("algorithm", ""))
            except PlatformError as exc:
                errors.append(FieldError(f"algorithms[{i}]", str(exc)))
        for i, entry in enumerate(problems):
            try:
                registry.get("problem", entry.get("problem", ""))
            except PlatformError as exc:
                errors.append(FieldError(f"problems[{i}]", str(exc)))
        if errors:
            _bad_request(errors)

        experiment_id = next_id("experiment")
        try:
            spec = ExperimentSpec(
                algorithms=[
                    AlgorithmSetting.make(
                        entry["algorithm"],
                        entry.get("operator"),
                        entry.get("function_params"),
                        entry.get("label", ""),
                    )
                    for entry in algorithms
                ],
                settings=[
                    ProblemSetting(
                        problem=entry["problem"],
                        m=entry.get("m"),
                        d=entry.get("d"),
                        n=entry.get("n", 100),
                        max_evaluations=entry.get("max_evaluations", 10000),
                    )
                    for entry in problems
                ],
                runs=doc.get("runs", 1),
                indicators=doc.get("indicators") or ["IGD"],
                folder=doc.get("folder") or str(folder / "experiments" / experiment_id),
                parallelism=doc.get("parallelism", 1),
                base_seed=doc.get("base_seed", 1),
                pf_size=doc.get("pf_size", 10000),
            )
        except PlatformError as exc:
            _bad_request([FieldError("spec", str(exc))])
        record = ExperimentRecord(experiment_id, spec)
        experiments[experiment_id] = record

        def worker():
            try:
                record.store = run_experiment(spec, progress=record.progress)
                record.status = "finished"
            except Exception as exc:
                record.status = "failed"
                record.error = f"{type(exc).__name__}: {exc}"

        threading.Thread(target=worker, daemon=True).start()
        return {"id": experiment_id, "status": record.status, "total_cells": record.total}

    def _get_experiment(experiment_id: str) -> ExperimentRecord:
        record = experiments.get(experiment_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown experiment {experiment_id!r}")
        return record

    @app.get("/api/experiments/{experiment_id}/progress")
    def experiment_progress(experiment_id: str):
        record = _get_experiment(experiment_id)
        with record.lock:
            doc = {
                "id": record.id,
                "status": record.status,
                "completed": record.completed,
                "total": record.total,
                "error": record.error,
            }
        if record.store is not None:
            doc["failures"] = [
                {
                    "algorithm": f.algorithm,
                    "setting": f.setting,
                    "run": f.run_index,
                    "error": f.error,
                }
                for f in record.store.failures
            ]
        return doc

    def _experiment_table(record: ExperimentRecord, indicator: str, control):
        if record.store is None:
            raise HTTPException(status_code=409, detail="experiment still running")
        try:
            if control is not None and control.isdigit():
                control = int(control)
            return aggregate_table(record.store, indicator, control)
        except PlatformError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/api/experiments/{experiment_id}/table")
    def experiment_table(experiment_id: str, indicator: str = "IGD",
                         control: str | None = None):
        record = _get_experiment(experiment_id)
        table = _experiment_table(record, indicator, control)
        return {
            "id": experiment_id,
            "indicator": table.indicator,
            "direction": table.direction,
            "columns": table.columns,
            "control_index": table.control_index,
            "rows": [
                {"problem": s.problem, "m": s.m, "d": s.d, "n": s.n,
                 "max_evaluations": s.max_evaluations}
                for s in table.rows
            ],
            "cells": [
                [
                    {
                        "mean": cell.mean,
                        "std": cell.std,
                        "sign": cell.sign,
                        "is_best": cell.is_best,
                        "text": cell_text(cell),
                    }
                    for cell in row
                ]
                for row in table.cells
            ],
            "footer": table.footer,
        }

    @app.get("/api/experiments/{experiment_id}/export")
    def experiment_export(experiment_id: str, indicator: str = "IGD",
                          format: str = "latex", control: str | None = None):
        record = _get_experiment(experiment_id)
        table = _experiment_table(record, indicator, control)
        try:
            text = export_table(table, format)
        except PlatformError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return PlainTextResponse(text)

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app
