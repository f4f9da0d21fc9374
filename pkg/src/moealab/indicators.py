"""Performance indicators: GD, IGD, HV/NHV, Spacing, Spread and Coverage.

All scores assume minimization.  Hypervolume is exact (recursive dimension
sweep) up to ``exact_max_m`` objectives and seeded Monte Carlo above; the
registered HV/NHV indicators normalize objectives by the reference front's
per-dimension range and use the reference point (1.1, ..., 1.1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .registry import Parameter, get, register

HV_REFERENCE = 1.1
HV_DEFAULT_SAMPLES = 1_000_000
HV_EXACT_MAX_M = 4
HV_MC_SEED = 20170815


@dataclass(frozen=True)
class IndicatorResult:
    name: str
    score: float
    direction: str
    reference_used: str = ""


def _matrix(values, name) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty 2-D matrix")
    return arr


def igd(pop_obj, pf_points) -> float:
    """Mean distance from each reference-front point to the population."""
    pop = _matrix(pop_obj, "pop_obj")
    pf = _matrix(pf_points, "pf_points")
    if pop.shape[1] != pf.shape[1]:
        raise ValueError("objective counts differ")
    return float(cdist(pf, pop).min(axis=1).mean())


def gd(pop_obj, pf_points) -> float:
    """Mean distance from each population point to the reference front."""
    return igd(pf_points, pop_obj)


def spacing(pop_obj) -> float:
    """Standard deviation of nearest-neighbor L1 distances."""
    pop = _matrix(pop_obj, "pop_obj")
    if len(pop) < 2:
        raise ValueError("spacing needs at least two points")
    dist = cdist(pop, pop, metric="cityblock")
    np.fill_diagonal(dist, np.inf)
    nearest = dist.min(axis=1)
    return float(np.std(nearest))


def spread(pop_obj, pf_points) -> float:
    """Generalized Delta: extreme-point distances plus gap irregularity.

    Gaps are consecutive (sorted by f1) for two objectives and
    nearest-neighbor for more.
    """
    pop = _matrix(pop_obj, "pop_obj")
    pf = _matrix(pf_points, "pf_points")
    n, m = pop.shape
    if n < 2:
        raise ValueError("spread needs at least two points")
    extremes = pf[pf.argmax(axis=0)]
    ext_dist = cdist(extremes, pop).min(axis=1).sum()
    if m == 2:
        ordered = pop[np.argsort(pop[:, 0], kind="stable")]
        gaps = np.linalg.norm(np.diff(ordered, axis=0), axis=1)
    else:
        dist = cdist(pop, pop)
        np.fill_diagonal(dist, np.inf)
        gaps = dist.min(axis=1)
    mean_gap = gaps.mean()
    denominator = ext_dist + (n - 1) * mean_gap
    if denominator == 0:
        return 0.0
    return float((ext_dist + np.abs(gaps - mean_gap).sum()) / denominator)


def coverage(set_a, set_b) -> float:
    """Fraction of B weakly dominated by (<= componentwise) some point of A."""
    a = _matrix(set_a, "set_a")
    b = _matrix(set_b, "set_b")
    covered = np.zeros(len(b), dtype=bool)
    for row in a:
        covered |= np.all(row <= b, axis=1)
    return float(covered.mean())


# -- hypervolume --------------------------------------------------------------


def _nondominated_min(rows: np.ndarray) -> np.ndarray:
    rows = np.unique(rows, axis=0)
    keep = np.ones(len(rows), dtype=bool)
    for i in range(len(rows)):
        if not keep[i]:
            continue
        weakly = np.all(rows >= rows[i], axis=1)
        weakly[i] = False
        keep &= ~weakly
    return rows[keep]


def _hv_2d(points: np.ndarray, ref: np.ndarray) -> float:
    p = points[np.argsort(points[:, 0], kind="stable")]
    xs = p[:, 0]
    ys = np.minimum.accumulate(p[:, 1])
    widths = np.append(xs[1:], ref[0]) - xs
    heights = ref[1] - ys
    return float(np.sum(widths * heights, where=widths > 0))


def _hv_exact(points: np.ndarray, ref: np.ndarray) -> float:
    if len(points) == 0:
        return 0.0
    m = points.shape[1]
    if m == 1:
        return float(ref[0] - points[:, 0].min())
    if m == 2:
        return _hv_2d(points, ref)
    pts = points[np.argsort(points[:, 0], kind="stable")]
    volume = 0.0
    i = 0
    while i < len(pts):
        x = pts[i, 0]
        j = i + 1
        while j < len(pts) and pts[j, 0] == x:
            j += 1
        next_x = pts[j, 0] if j < len(pts) else ref[0]
        width = next_x - x
        if width > 0:
            slab = _nondominated_min(pts[:j, 1:])
            volume += width * _hv_exact(slab, ref[1:])
        i = j
    return volume


def _hv_monte_carlo(points, ref, n_samples, seed) -> float:
    rng = np.random.Generator(np.random.Philox(np.uint64(seed)))
    low = points.min(axis=0)
    box = float(np.prod(ref - low))
    hits = 0
    remaining = n_samples
    while remaining > 0:
        batch = min(remaining, 1 << 17)
        samples = low + rng.random((batch, len(ref))) * (ref - low)
        dominated = np.zeros(batch, dtype=bool)
        for p in points:
            dominated |= np.all(samples >= p, axis=1)
        hits += int(dominated.sum())
        remaining -= batch
    return box * hits / n_samples


def hv(
    pop_obj,
    reference_point,
    origin=None,
    method: str = "auto",
    n_samples: int = HV_DEFAULT_SAMPLES,
    seed: int = HV_MC_SEED,
    exact_max_m: int = HV_EXACT_MAX_M,
) -> tuple[float, float]:
    """Hypervolume against ``reference_point`` plus its normalized form.

    Only points strictly dominating the reference point contribute; an empty
    contributing set yields volume zero.  ``nhv`` divides by the box volume
    between ``origin`` (default: all zeros) and the reference point.
    """
    pop = np.asarray(pop_obj, dtype=float)
    if pop.ndim != 2:
        raise ValueError("pop_obj must be a 2-D matrix")
    ref = np.asarray(reference_point, dtype=float)
    if ref.shape != (pop.shape[1],):
        raise ValueError("reference point length must match objective count")
    origin = np.zeros_like(ref) if origin is None else np.asarray(origin, dtype=float)
    box = float(np.prod(ref - origin))
    if box <= 0:
        raise ValueError("reference point must exceed the normalization origin")
    contributing = pop[np.all(pop < ref, axis=1)]
    if method == "auto":
        method = "exact" if pop.shape[1] <= exact_max_m else "monte_carlo"
    if method not in ("exact", "monte_carlo"):
        raise ValueError(f"unknown hv method {method!r}")
    if len(contributing) == 0:
        volume = 0.0
    elif method == "exact":
        volume = _hv_exact(contributing, ref)
    else:
        volume = _hv_monte_carlo(contributing, ref, int(n_samples), seed)
    return volume, volume / box


def _normalized_to_front(pop, pf):
    lo = pf.min(axis=0)
    span = pf.max(axis=0) - lo
    span = np.where(span > 1e-12, span, 1.0)
    return (pop - lo) / span


def hv_against_front(pop_obj, pf_points, method="auto",
                     n_samples=HV_DEFAULT_SAMPLES, exact_max_m=HV_EXACT_MAX_M):
    """(hv, nhv, method) for front-normalized objectives, r = (1.1, ..., 1.1)."""
    pop = _matrix(pop_obj, "pop_obj")
    pf = _matrix(pf_points, "pf_points")
    normalized = _normalized_to_front(pop, pf)
    m = pop.shape[1]
    ref = np.full(m, HV_REFERENCE)
    if method == "auto":
        method = "exact" if m <= exact_max_m else "monte_carlo"
    volume, normalized_volume = hv(
        normalized, ref, method=method, n_samples=n_samples, exact_max_m=exact_max_m
    )
    return volume, normalized_volume, method


def _hv_params(function_params):
    defaults = (float(HV_DEFAULT_SAMPLES), float(HV_EXACT_MAX_M))
    supplied = tuple(function_params or ())
    if len(supplied) > len(defaults):
        raise ValueError("HV takes at most two parameters (samples, exactMaxM)")
    resolved = supplied + defaults[len(supplied):]
    return int(resolved[0]), int(resolved[1])


_HV_PARAM_SPECS = [
    Parameter("samples", float(HV_DEFAULT_SAMPLES), "Monte Carlo sample count"),
    Parameter("exactMaxM", float(HV_EXACT_MAX_M), "largest M computed exactly"),
]


@register("indicator", "IGD", description="Inverted generational distance",
          labels=("indicator",), direction="minimize")
def _igd_indicator(pop_obj, pf_points, function_params=None):
    return IndicatorResult("IGD", igd(pop_obj, pf_points), "minimize",
                           f"PF sample n={len(pf_points)}")


@register("indicator", "GD", description="Generational distance",
          labels=("indicator",), direction="minimize")
def _gd_indicator(pop_obj, pf_points, function_params=None):
    return IndicatorResult("GD", gd(pop_obj, pf_points), "minimize",
                           f"PF sample n={len(pf_points)}")


@register("indicator", "HV", description="Hypervolume (front-normalized, r=1.1)",
          labels=("indicator",), direction="maximize", params=_HV_PARAM_SPECS)
def _hv_indicator(pop_obj, pf_points, function_params=None):
    n_samples, exact_max_m = _hv_params(function_params)
    volume, _, method = hv_against_front(
        pop_obj, pf_points, n_samples=n_samples, exact_max_m=exact_max_m
    )
    return IndicatorResult("HV", volume, "maximize",
                           f"r=(1.1,)*M after PF normalization, {method}")


@register("indicator", "NHV", description="Normalized hypervolume",
          labels=("indicator",), direction="maximize", params=_HV_PARAM_SPECS)
def _nhv_indicator(pop_obj, pf_points, function_params=None):
    n_samples, exact_max_m = _hv_params(function_params)
    _, normalized_volume, method = hv_against_front(
        pop_obj, pf_points, n_samples=n_samples, exact_max_m=exact_max_m
    )
    return IndicatorResult("NHV", normalized_volume, "maximize",
                           f"r=(1.1,)*M after PF normalization, {method}")


@register("indicator", "Spacing", description="Spacing (nearest-neighbor spread)",
          labels=("indicator",), direction="minimize")
def _spacing_indicator(pop_obj, pf_points=None, function_params=None):
    return IndicatorResult("Spacing", spacing(pop_obj), "minimize")


@register("indicator", "Spread", description="Spread (generalized Delta)",
          labels=("indicator",), direction="minimize")
def _spread_indicator(pop_obj, pf_points, function_params=None):
    return IndicatorResult("Spread", spread(pop_obj, pf_points), "minimize",
                           f"PF sample n={len(pf_points)}")


@register("indicator", "Coverage", description="Fraction of the PF sample covered",
          labels=("indicator",), direction="maximize")
def _coverage_indicator(pop_obj, pf_points, function_params=None):
    return IndicatorResult("Coverage", coverage(pop_obj, pf_points), "maximize",
                           f"PF sample n={len(pf_points)}")


def compute(name: str, pop_obj, pf_points, function_params=None) -> IndicatorResult:
    """Evaluate a registered indicator by name."""
    info = get("indicator", name)
    return info.func(pop_obj, pf_points, function_params=function_params)


def direction_of(name: str) -> str:
    return get("indicator", name).direction
