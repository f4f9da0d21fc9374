import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moealab.indicators import (
    IndicatorResult,
    compute,
    coverage,
    direction_of,
    gd,
    hv,
    hv_against_front,
    igd,
    spacing,
    spread,
)


def hv_inclusion_exclusion(points, ref):
    """Independent oracle: inclusion-exclusion over all box subsets."""
    points = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    n, m = points.shape
    maxes = np.full((2**n, m), -np.inf)
    popcount = np.zeros(2**n, dtype=int)
    for k in range(n):
        lo, hi = 1 << k, 1 << (k + 1)
        maxes[lo:hi] = np.maximum(maxes[:lo], points[k])
        popcount[lo:hi] = popcount[:lo] + 1
    vols = np.prod(np.clip(ref - maxes[1:], 0, None), axis=1)
    signs = np.where(popcount[1:] % 2 == 1, 1.0, -1.0)
    return float(np.sum(signs * vols))


class TestIgdGd:
    def test_igd_identity(self):
        pts = np.random.default_rng(0).random((20, 3))
        assert igd(pts, pts) == 0.0

    def test_igd_hand_example(self):
        assert igd([[0, 0]], [[1, 0], [0, 1]]) == pytest.approx(1.0)

    def test_igd_monotone_in_population(self):
        rng = np.random.default_rng(1)
        pop = rng.random((10, 2))
        pf = rng.random((30, 2))
        base = igd(pop, pf)
        extended = igd(np.vstack([pop, rng.random((1, 2))]), pf)
        assert extended <= base + 1e-15

    def test_gd_subset_zero(self):
        pf = np.random.default_rng(2).random((15, 2))
        assert gd(pf[:5], pf) == 0.0

    def test_gd_hand_example(self):
        assert gd([[1, 1]], [[0, 1], [1, 0]]) == pytest.approx(1.0)

    def test_gd_monotone_in_front(self):
        rng = np.random.default_rng(3)
        pop = rng.random((8, 3))
        pf = rng.random((20, 3))
        base = gd(pop, pf)
        extended = gd(pop, np.vstack([pf, rng.random((1, 3))]))
        assert extended <= base + 1e-15

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValueError):
            igd(np.empty((0, 2)), [[1, 2]])
        with pytest.raises(ValueError):
            gd([[1, 2]], np.empty((0, 2)))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 12), st.integers(1, 12), st.integers(2, 4), st.integers(0, 10**6))
    def test_igd_gd_symmetry(self, na, nb, m, seed):
        rng = np.random.default_rng(seed)
        a, b = rng.random((na, m)), rng.random((nb, m))
        assert igd(a, b) == gd(b, a)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        pop, pf = rng.random((12, 3)), rng.random((25, 3))
        perm = rng.permutation(12)
        assert igd(pop, pf) == igd(pop[perm], pf)
        assert gd(pop, pf) == pytest.approx(gd(pop[perm], pf), abs=1e-12)


class TestHv:
    def test_worked_2d_example(self):
        volume, normalized = hv([[1, 2], [2, 1]], [3, 3])
        assert volume == pytest.approx(3.0, abs=1e-12)
        assert normalized == pytest.approx(3.0 / 9.0, abs=1e-12)

    def test_point_at_reference_contributes_nothing(self):
        volume, _ = hv([[3.0, 3.0]], [3, 3])
        assert volume == 0.0

    def test_dominated_point_changes_nothing(self):
        base, _ = hv([[1, 2], [2, 1]], [3, 3])
        more, _ = hv([[1, 2], [2, 1], [2.5, 2.5]], [3, 3])
        assert more == pytest.approx(base, abs=1e-12)

    def test_empty_contribution_is_zero(self):
        assert hv([[5.0, 5.0]], [3, 3])[0] == 0.0

    def test_monotone_in_points(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            pts = rng.random((8, 3))
            ref = np.full(3, 1.1)
            base, _ = hv(pts, ref)
            grown, _ = hv(np.vstack([pts, rng.random((1, 3))]), ref)
            assert grown >= base - 1e-12

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_exact_matches_inclusion_exclusion(self, m):
        rng = np.random.default_rng(10 + m)
        for _ in range(15):
            n = int(rng.integers(1, 12))
            pts = rng.random((n, m))
            ref = np.full(m, 1.2)
            expected = hv_inclusion_exclusion(pts, ref)
            got, _ = hv(pts, ref, method="exact")
            assert got == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_exact_available_beyond_auto_threshold(self):
        rng = np.random.default_rng(30)
        pts = rng.random((8, 5))
        ref = np.full(5, 1.1)
        got, _ = hv(pts, ref, method="exact")
        assert got == pytest.approx(hv_inclusion_exclusion(pts, ref), rel=1e-10)

    def test_monte_carlo_within_one_percent(self):
        rng = np.random.default_rng(11)
        pts = rng.random((10, 5))
        ref = np.full(5, 1.1)
        exact, _ = hv(pts, ref, method="exact")
        approx, _ = hv(pts, ref, method="monte_carlo", n_samples=1_000_000)
        assert abs(approx - exact) / exact < 0.01

    def test_auto_switches_to_monte_carlo(self):
        # M=5 goes through Monte Carlo by default; seeded, so repeatable
        pts = np.random.default_rng(12).random((6, 5))
        a = hv(pts, np.full(5, 1.1))
        b = hv(pts, np.full(5, 1.1))
        assert a == b

    def test_bad_reference_rejected(self):
        with pytest.raises(ValueError):
            hv([[0.5, 0.5]], [1.0])
        with pytest.raises(ValueError):
            hv([[0.5, 0.5]], [0.0, 0.0])

    def test_front_normalized_wrapper(self):
        pf = np.column_stack([np.linspace(0, 1, 50), 1 - np.linspace(0, 1, 50)])
        volume, normalized, method = hv_against_front(pf, pf)
        assert method == "exact"
        assert 0 < normalized < 1
        assert volume == pytest.approx(normalized * 1.1**2)


class TestSpacing:
    def test_equally_spaced_zero(self):
        pts = np.column_stack([np.arange(5.0), 4 - np.arange(5.0)])
        assert spacing(pts) == pytest.approx(0.0)

    def test_duplicated_population_zero(self):
        pop = np.random.default_rng(0).random((6, 2))
        assert spacing(np.vstack([pop, pop])) == 0.0

    def test_hand_example(self):
        # 1-D points 0, 1, 5: nearest L1 distances (1, 1, 4)
        assert spacing([[0.0], [1.0], [5.0]]) == pytest.approx(np.std([1, 1, 4]))

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            spacing([[1.0, 2.0]])


class TestSpread:
    def test_uniform_sample_is_zero(self):
        f1 = np.linspace(0, 1, 11)
        pf = np.column_stack([f1, 1 - f1])
        assert spread(pf, pf) == pytest.approx(0.0, abs=1e-9)

    def test_hand_example(self):
        pop = np.array([[0, 1], [0.5, 0.5], [1, 0]])
        assert spread(pop, pop) == pytest.approx(0.0, abs=1e-12)

    def test_cluster_can_exceed_one(self):
        # duplicated cluster plus one outlier: nearest-neighbor gaps (0, 0, X)
        # give gap deviations of 4X/3 against a (n-1)*mean of 2X/3
        pf = np.array([[0.5, 0.5, 0.5]])
        pop = np.array([[0.5, 0.5, 0.5], [0.5, 0.5, 0.5], [10.0, 10.0, 10.0]])
        assert spread(pop, pf) == pytest.approx(2.0)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            spread([[0.1, 0.2]], [[0, 1], [1, 0]])

    def test_many_objective_branch(self):
        rng = np.random.default_rng(4)
        pop = rng.random((10, 3))
        pf = rng.random((40, 3))
        value = spread(pop, pf)
        perm = rng.permutation(10)
        assert spread(pop[perm], pf) == pytest.approx(value)


class TestCoverage:
    def test_reflexive(self):
        pts = np.random.default_rng(1).random((10, 3))
        assert coverage(pts, pts) == 1.0

    def test_strict_domination(self):
        a = np.zeros((1, 2))
        b = np.random.default_rng(2).random((8, 2)) + 0.1
        assert coverage(a, b) == 1.0

    def test_half_covered(self):
        assert coverage([[0, 2]], [[1, 3], [0, 1]]) == 0.5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            coverage(np.empty((0, 2)), [[1, 2]])


class TestRegistry:
    def test_directions(self):
        assert direction_of("IGD") == "minimize"
        assert direction_of("GD") == "minimize"
        assert direction_of("Spacing") == "minimize"
        assert direction_of("Spread") == "minimize"
        assert direction_of("HV") == "maximize"
        assert direction_of("NHV") == "maximize"
        assert direction_of("Coverage") == "maximize"

    def test_compute_returns_result(self):
        pf = np.column_stack([np.linspace(0, 1, 30), 1 - np.linspace(0, 1, 30)])
        res = compute("IGD", pf, pf)
        assert isinstance(res, IndicatorResult)
        assert res.score == 0.0
        assert "30" in res.reference_used

    def test_hv_indicator_params_override(self):
        pf = np.column_stack([np.linspace(0, 1, 20), 1 - np.linspace(0, 1, 20)])
        res = compute("HV", pf, pf, function_params=(1000.0, 0.0))
        assert "monte_carlo" in res.reference_used
