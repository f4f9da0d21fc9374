"""Experiment harness: grid execution, statistics and table export."""
from .grid import (
    AlgorithmSetting,
    CellFailure,
    ExperimentSpec,
    ProblemSetting,
    ResultStore,
    cell_seed,
    parse_spec_file,
    parse_spec_text,
    run_experiment,
)
from .resultio import load_result, result_to_text, results_equal, save_result
from .table import (
    ExperimentTable,
    TableCell,
    aggregate_table,
    table_from_values,
    cell_latex,
    cell_text,
    export_table,
    export_table_to,
    format_mean,
    format_std,
)
from .wilcoxon import exact_rank_sum_p, wilcoxon_rank_sum

__all__ = [
    "AlgorithmSetting",
    "CellFailure",
    "ExperimentSpec",
    "ExperimentTable",
    "ProblemSetting",
    "ResultStore",
    "TableCell",
    "aggregate_table",
    "cell_latex",
    "cell_text",
    "cell_seed",
    "exact_rank_sum_p",
    "export_table",
    "export_table_to",
    "format_mean",
    "format_std",
    "load_result",
    "parse_spec_file",
    "parse_spec_text",
    "result_to_text",
    "results_equal",
    "run_experiment",
    "save_result",
    "table_from_values",
    "wilcoxon_rank_sum",
]
