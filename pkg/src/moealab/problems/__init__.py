"""Benchmark problems and reference-front sampling."""
from .base import ProblemDefinition, problem_init
from .weights import das_dennis, smallest_lattice

from . import dtlz as _dtlz  # noqa: F401  (registers DTLZ1-7)
from . import zdt as _zdt  # noqa: F401  (registers ZDT1-4, ZDT6)

__all__ = ["ProblemDefinition", "problem_init", "das_dennis", "smallest_lattice"]
