"""Command-line entry point.

Single-run usage mirrors the platform's parameter table with conventional
double-dash flags (``--algorithm NSGAII --problem DTLZ2 --N 100 ...``), and
``--<Name>-parameter v1,v2,...`` assigns positional parameter values to any
registered function.  ``list`` prints the registry with parameter metadata;
``experiment <specfile>`` runs a grid and exports its tables.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import registry
from .errors import PlatformError, SchemaError
from .experiment import (
    ResultStore,
    aggregate_table,
    export_table_to,
    parse_spec_file,
    result_to_text,
    run_experiment,
    save_result,
)
from .indicators import compute as compute_indicator
from .kernel import RunConfig, RunMode, execute, objectives_of
from .problems import problem_init

SUMMARY_INDICATORS = ("IGD", "HV", "GD", "Spacing")
PF_SUMMARY_SIZE = 10000


def _build_run_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moealab",
        description="Run one multi-objective algorithm on one problem.",
        epilog="Any registered function X also accepts --X-parameter v1,v2,...",
    )
    parser.add_argument("--algorithm", default="NSGAII", help="algorithm name (default: %(default)s)")
    parser.add_argument("--problem", default="DTLZ2", help="problem name (default: %(default)s)")
    parser.add_argument("--operator", default=None,
                        help="operator name (default: the algorithm's registered operator, EAreal otherwise)")
    parser.add_argument("--N", type=int, default=100, help="population size (default: %(default)s)")
    parser.add_argument("--M", type=int, default=None,
                        help="number of objectives (default: problem default, 3 for DTLZ2)")
    parser.add_argument("--D", type=int, default=None,
                        help="number of decision variables (default: problem default, 12 for DTLZ2)")
    parser.add_argument("--evaluation", type=int, default=10000,
                        help="maximum number of fitness evaluations (default: %(default)s)")
    parser.add_argument("--run", type=int, default=1, help="run number (default: %(default)s)")
    parser.add_argument("--mode", type=int, choices=(1, 2), default=1,
                        help="1: display result, 2: save result (default: %(default)s)")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed (default: the run number)")
    parser.add_argument("--folder", default="results",
                        help="results folder for --mode 2 (default: %(default)s)")
    parser.add_argument("--snapshot-stride", type=int, default=1,
                        help="keep every k-th generation snapshot (default: %(default)s)")
    return parser


def _parse_function_params(leftovers: list[str]) -> dict[str, tuple[float, ...]]:
    params: dict[str, tuple[float, ...]] = {}
    i = 0
    while i < len(leftovers):
        token = leftovers[i]
        if not token.startswith("--"):
            raise SystemExit(_fail(2, f"unexpected argument {token!r}"))
        body = token[2:]
        if "=" in body:
            name_part, value = body.split("=", 1)
            i += 1
        else:
            name_part = body
            if i + 1 >= len(leftovers):
                raise SystemExit(_fail(2, f"flag --{name_part} needs a value"))
            value = leftovers[i + 1]
            i += 2
        if not name_part.endswith("-parameter"):
            raise SystemExit(_fail(2, f"unknown flag --{name_part}"))
        function = name_part[: -len("-parameter")]
        try:
            params[function] = tuple(float(v) for v in value.split(","))
        except ValueError:
            raise SystemExit(_fail(2, f"--{name_part} expects comma-separated numbers, got {value!r}"))
    return params


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _cmd_list() -> int:
    for kind in registry.KINDS:
        for info in registry.infos(kind):
            extras = []
            if info.default_operator:
                extras.append(f"operator={info.default_operator}")
            if info.direction:
                extras.append(f"direction={info.direction}")
            if info.encoding:
                extras.append(f"encoding={info.encoding}")
            suffix = (" [" + " ".join(extras) + "]") if extras else ""
            print(f"{kind}\t{info.name}\t{info.description}{suffix}")
            for param in info.params:
                print(f"{kind}\t{info.name}\tparam\t{param.name}\t{param.default}\t{param.help}")
    return 0


def _cmd_experiment(spec_path: str) -> int:
    try:
        spec = parse_spec_file(spec_path)
    except FileNotFoundError:
        return _fail(2, f"experiment spec {spec_path!r} not found")
    except SchemaError as exc:
        return _fail(2, str(exc))
    try:
        store = run_experiment(spec, progress=_print_progress)
        print()
        for failure in store.failures:
            print(f"cell failed: {failure.algorithm} / {failure.setting} "
                  f"run {failure.run_index}: {failure.error}")
        folder = Path(spec.folder)
        for indicator in spec.indicators:
            table = aggregate_table(store, indicator)
            for fmt, suffix in (("latex", "tex"), ("csv", "csv")):
                out = export_table_to(table, fmt, folder / f"table_{indicator}.{suffix}")
                print(f"wrote {out}")
        return 0
    except PlatformError as exc:
        return _fail(2, str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        return _fail(1, f"experiment failed: {type(exc).__name__}: {exc}")


def _print_progress(done: int, total: int) -> None:
    print(f"\rcells {done}/{total}", end="", flush=True)


def _cmd_run(argv: list[str]) -> int:
    parser = _build_run_parser()
    try:
        args, leftovers = parser.parse_known_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        function_params = _parse_function_params(leftovers)
    except SystemExit as exc:
        return int(exc.code)

    try:
        config = RunConfig(
            algorithm=args.algorithm,
            problem=args.problem,
            operator=args.operator,
            n=args.N,
            m=args.M,
            d=args.D,
            max_evaluations=args.evaluation,
            run_no=args.run,
            mode=RunMode(args.mode),
            seed=args.seed,
            snapshot_stride=args.snapshot_stride,
            function_params=function_params,
        )
        result = execute(config)
    except PlatformError as exc:
        return _fail(2, str(exc))
    except Exception as exc:
        return _fail(1, f"run failed: {type(exc).__name__}: {exc}")

    if config.mode is RunMode.DISPLAY:
        _print_summary(result)
        sys.stdout.write(result_to_text(result))
    else:
        path = ResultStore.path_for(
            args.folder, config.algorithm,
            _setting_of(config), config.run_no,
        )
        save_result(result, path)
        print(path)
    return 0


def _setting_of(config):
    from .experiment import ProblemSetting

    return ProblemSetting(
        problem=config.problem, m=config.m, d=config.d,
        n=config.n, max_evaluations=config.max_evaluations,
    )


def _print_summary(result) -> None:
    config = result.config
    pf = problem_init(config.problem, config.m, config.d).sample_pf(PF_SUMMARY_SIZE)
    obj = objectives_of(result.final_population)
    print(f"# {config.algorithm} on {config.problem} "
          f"(N={config.n}, M={config.m}, D={config.d}, "
          f"FE={result.snapshots[-1].evaluations}, seed={result.seed})")
    for name in SUMMARY_INDICATORS:
        outcome = compute_indicator(name, obj, pf, function_params=config.params_for(name))
        print(f"# {name} {outcome.score!r}")
    if result.elapsed_seconds is not None:
        print(f"# elapsed {result.elapsed_seconds:.3f}s")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "list":
        return _cmd_list()
    if argv and argv[0] == "experiment":
        if len(argv) != 2:
            return _fail(2, "usage: moealab experiment <specfile>")
        return _cmd_experiment(argv[1])
    return _cmd_run(argv)


if __name__ == "__main__":
    sys.exit(main())
