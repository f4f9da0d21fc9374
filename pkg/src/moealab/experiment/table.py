"""Statistics tables: mean (std), significance signs, best-cell marking,
and LaTeX/CSV export in the journal-table format.

Means print with five significant digits and standard deviations with
three, both in compact scientific notation (e.g. ``1.2629e-1 (1.80e-1)``).
Standard deviations use the n-1 normalization; a single run prints 0.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import indicators as indicators_mod
from ..errors import ConfigurationError
from ..kernel.individual import objectives_of
from ..problems.base import problem_init
from .grid import ExperimentSpec, ProblemSetting, ResultStore
from .wilcoxon import SIGN_SIMILAR, wilcoxon_rank_sum

SIGN_NONE = ""
MISSING = "—"


@dataclass
class TableCell:
    mean: float | None = None
    std: float | None = None
    sign: str = SIGN_NONE
    is_best: bool = False
    values: tuple[float, ...] = ()


@dataclass
class ExperimentTable:
    indicator: str
    direction: str
    columns: list[str]
    control_index: int
    rows: list[ProblemSetting]
    cells: list[list[TableCell]]
    footer: list[str | None] = field(default_factory=list)

    def row_label(self, i: int) -> str:
        return self.rows[i].label


def sci(x: float, sig: int) -> str:
    """Compact scientific notation: 0.12629 -> '1.2629e-1' (5 digits)."""
    if not np.isfinite(x):
        return str(x)
    text = f"{x:.{sig - 1}e}"
    mantissa, exponent = text.split("e")
    return f"{mantissa}e{'+' if int(exponent) >= 0 else '-'}{abs(int(exponent))}"


def format_mean(x: float) -> str:
    return sci(x, 5)


def format_std(x: float) -> str:
    return sci(x, 3)


def cell_text(cell: TableCell) -> str:
    """Plain-text rendering, e.g. '1.2629e-1 (1.80e-1) +'."""
    if cell.mean is None:
        return MISSING
    body = f"{format_mean(cell.mean)} ({format_std(cell.std)})"
    if cell.sign:
        body += f" {cell.sign}"
    return body


_LATEX_SIGNS = {"+": "$+$", "-": "$-$", SIGN_SIMILAR: r"$\approx$"}


def cell_latex(cell: TableCell) -> str:
    if cell.mean is None:
        return MISSING
    body = f"{format_mean(cell.mean)} ({format_std(cell.std)})"
    if cell.sign:
        body += f" {_LATEX_SIGNS[cell.sign]}"
    if cell.is_best:
        body = r"\hl{" + body + "}"
    return body


def _indicator_values(store: ResultStore, algorithm, setting, indicator,
                      pf, params) -> tuple[float, ...]:
    values = []
    for run_index in range(1, store.spec.runs + 1):
        result = store.load(algorithm, setting, run_index)
        if result is None:
            continue
        obj = objectives_of(result.final_population)
        values.append(
            indicators_mod.compute(indicator, obj, pf, function_params=params).score
        )
    return tuple(values)


def _resolve_control(columns: list[str], control) -> int:
    if control is None:
        return len(columns) - 1
    if isinstance(control, str):
        if control not in columns:
            raise ConfigurationError(f"control column {control!r} not in {columns}")
        return columns.index(control)
    index = int(control)
    if not 0 <= index < len(columns):
        raise ConfigurationError(f"control index {index} out of range")
    return index


def table_from_values(rows, columns, values_grid, indicator, direction,
                      control=None, alpha=0.05) -> ExperimentTable:
    """Build a table from per-run indicator values (one tuple per cell)."""
    control_index = _resolve_control(list(columns), control)
    cells: list[list[TableCell]] = []
    for row_values in values_grid:
        row = []
        for values in row_values:
            values = tuple(values)
            if values:
                mean = float(np.mean(values))
                std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
                row.append(TableCell(mean=mean, std=std, values=values))
            else:
                row.append(TableCell())
        control_values = row[control_index].values
        for j, cell in enumerate(row):
            if j == control_index or cell.mean is None or not control_values:
                continue
            if min(len(cell.values), len(control_values)) < 2:
                cell.sign = SIGN_SIMILAR  # no test power below two runs
                continue
            _, cell.sign = wilcoxon_rank_sum(
                cell.values, control_values, alpha=alpha, direction=direction
            )
        means = [c.mean for c in row]
        finite = [m for m in means if m is not None]
        if finite:
            best = min(finite) if direction == "minimize" else max(finite)
            winners = [j for j, m in enumerate(means) if m == best]
            chosen = control_index if control_index in winners else winners[0]
            row[chosen].is_best = True
        cells.append(row)

    footer: list[str | None] = []
    for j in range(len(columns)):
        if j == control_index:
            footer.append(None)
            continue
        signs = [row[j].sign for row in cells if row[j].mean is not None]
        footer.append(
            f"{signs.count('+')}/{signs.count('-')}/{signs.count(SIGN_SIMILAR)}"
        )
    return ExperimentTable(
        indicator=indicator, direction=direction, columns=list(columns),
        control_index=control_index, rows=list(rows),
        cells=cells, footer=footer,
    )


def aggregate_table(store: ResultStore, indicator: str, control=None) -> ExperimentTable:
    """Mean/std per cell plus Wilcoxon signs against the control column."""
    spec: ExperimentSpec = store.spec
    columns = [a.label for a in spec.algorithms]
    direction = indicators_mod.direction_of(indicator)
    params = spec.indicator_params.get(indicator)
    values_grid = []
    for setting in spec.settings:
        pf = problem_init(setting.problem, setting.m, setting.d).sample_pf(spec.pf_size)
        values_grid.append(
            [
                _indicator_values(store, algorithm, setting, indicator, pf, params)
                for algorithm in spec.algorithms
            ]
        )
    return table_from_values(
        spec.settings, columns, values_grid, indicator, direction,
        control=control, alpha=spec.alpha,
    )


def export_table(table: ExperimentTable, fmt: str) -> str:
    if fmt == "latex":
        return _export_latex(table)
    if fmt == "csv":
        return _export_csv(table)
    raise ConfigurationError(f"unknown export format {fmt!r}; use 'latex' or 'csv'")


def export_table_to(table: ExperimentTable, fmt: str, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(export_table(table, fmt), encoding="utf-8")
    return path


def _export_latex(table: ExperimentTable) -> str:
    lines = [
        r"\begin{tabular}{" + "c" * (3 + len(table.columns)) + "}",
        r"\toprule",
        " & ".join(["Problem", "$M$", "$D$"] + table.columns) + r"\\",
        r"\midrule",
    ]
    previous_problem = None
    for i, setting in enumerate(table.rows):
        if previous_problem is not None and setting.problem != previous_problem:
            lines.append(r"\hline")
        name = setting.problem if setting.problem != previous_problem else ""
        previous_problem = setting.problem
        cells = [cell_latex(c) for c in table.cells[i]]
        lines.append(" & ".join([name, str(setting.m), str(setting.d)] + cells) + r"\\")
    footer_cells = ["" if tally is None else tally for tally in table.footer]
    lines.append(r"\hline")
    lines.append(
        " & ".join([r"\multicolumn{3}{c}{$+/-/\approx$}"] + footer_cells) + r"\\"
    )
    lines.append(r"\bottomrule")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def _export_csv(table: ExperimentTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["Problem", "M", "D"]
    for label in table.columns:
        header += [f"{label} mean", f"{label} std", f"{label} sign"]
    writer.writerow(header)
    for i, setting in enumerate(table.rows):
        row = [setting.problem, setting.m, setting.d]
        for cell in table.cells[i]:
            if cell.mean is None:
                row += ["", "", ""]
            else:
                row += [repr(cell.mean), repr(cell.std), cell.sign]
        writer.writerow(row)
    footer = ["+/-/≈", "", ""]
    for tally in table.footer:
        footer += ["", "", tally or ""]
    writer.writerow(footer)
    return buffer.getvalue()
