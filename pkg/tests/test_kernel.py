import numpy as np
import pytest

from moealab import registry
from moealab.errors import BudgetExhaustedError, ConfigurationError
from moealab.kernel import RunConfig, Run, RunMode, execute, objectives_of


def make_run(**overrides):
    defaults = dict(algorithm="NSGAII", problem="ZDT1", n=100, max_evaluations=10000, seed=42)
    defaults.update(overrides)
    return Run(RunConfig(**defaults))


class TestRunConfig:
    def test_defaults_follow_problem(self):
        run = make_run(problem="DTLZ2")
        assert run.config.m == 3 and run.config.d == 12
        assert run.config.operator == "EAreal"
        assert run.config.encoding == "real"

    def test_frozen_after_init(self):
        run = make_run()
        with pytest.raises(AttributeError):
            run.config.n = 5
        with pytest.raises(ValueError):
            run.config.lower[0] = -1.0

    def test_positive_field_validation(self):
        with pytest.raises(ConfigurationError):
            RunConfig(n=0)
        with pytest.raises(ConfigurationError):
            RunConfig(max_evaluations=-5)
        with pytest.raises(ConfigurationError):
            RunConfig(m=0)

    def test_seed_defaults_to_run_no(self):
        cfg = RunConfig(run_no=7)
        assert cfg.seed == 7

    def test_mode_enum(self):
        assert RunConfig(mode=2).mode is RunMode.SAVE

    def test_unknown_operator_encoding_mismatch(self):
        with pytest.raises(ConfigurationError):
            Run(RunConfig(problem="ZDT1", operator="EAbinary"))


class TestInitialization:
    def test_size_zero(self):
        run = make_run()
        pop = run.initialization(0)
        assert pop == []
        assert run.ledger.consumed == 0

    def test_bounds_containment(self):
        run = make_run(problem="ZDT1")
        pop = run.initialization(100)
        dec = np.array([ind.dec for ind in pop])
        assert dec.shape == (100, 30)
        assert np.all(dec >= 0) and np.all(dec <= 1)
        assert run.ledger.consumed == 100

    def test_seed_determinism(self):
        pops = []
        for _ in range(2):
            run = make_run(seed=42)
            pops.append(run.initialization(50))
        a = np.array([ind.dec for ind in pops[0]])
        b = np.array([ind.dec for ind in pops[1]])
        assert np.array_equal(a, b)

    def test_budget_already_exhausted(self):
        run = make_run(max_evaluations=10)
        run.initialization(10)
        with pytest.raises(BudgetExhaustedError):
            run.initialization(5)


class TestSpawn:
    def test_zero_rows(self):
        run = make_run()
        assert run.spawn_individuals(np.empty((0, 30))) == []
        assert run.ledger.consumed == 0

    def test_dtlz2_spot_value(self):
        run = make_run(problem="DTLZ2")
        row = np.full((1, 12), 0.5)
        row[0, :2] = 0.0
        (ind,) = run.spawn_individuals(row)
        assert np.allclose(ind.obj, [1.0, 0.0, 0.0], atol=1e-12)
        assert ind.con.shape == (0,)
        assert run.ledger.consumed == 1

    def test_budget_overshoot_by_final_batch(self):
        run = make_run(max_evaluations=10)
        run.initialization(9)
        run.spawn_individuals(np.zeros((2, 30)))
        assert run.ledger.consumed == 11
        assert run.not_terminated([]) is False

    def test_individual_immutable(self):
        run = make_run()
        (ind,) = run.spawn_individuals(np.zeros((1, 30)))
        with pytest.raises(ValueError):
            ind.dec[0] = 0.5
        with pytest.raises(ValueError):
            ind.obj[0] = 0.5
        with pytest.raises(AttributeError):
            ind.obj = np.zeros(2)

    def test_auxiliary_data_stored_readonly(self):
        run = make_run()
        speed = np.ones((2, 30))
        pop = run.spawn_individuals(np.zeros((2, 30)), add={"speed": speed})
        assert np.array_equal(pop[1].add["speed"], np.ones(30))
        with pytest.raises(ValueError):
            pop[0].add["speed"][0] = 3.0


class TestNotTerminated:
    def test_true_records_snapshot(self):
        run = make_run()
        pop = run.initialization(10)
        assert run.not_terminated(pop) is True
        assert len(run.snapshots) == 1
        assert run.snapshots[0].generation == 0
        assert run.snapshots[0].evaluations == 10

    def test_boundary_false(self):
        run = make_run(max_evaluations=10)
        pop = run.initialization(10)
        assert run.not_terminated(pop) is False
        assert run.final_population == tuple(pop)

    def test_generation_loop_snapshot_count(self):
        # N=100, budget=10000, one N-sized batch per generation:
        # check #1 after init, then 99 post-generation checks, the last of
        # which fails -> exactly 100 snapshots.
        run = make_run(n=100, max_evaluations=10000)
        pop = run.initialization()
        while run.not_terminated(pop):
            pop = run.variation(pop)
        assert len(run.snapshots) == 100
        assert run.snapshots[-1].evaluations == 10000
        assert run.final_population is not None

    def test_snapshot_thinning_keeps_final(self):
        run = make_run(n=10, max_evaluations=100, snapshot_stride=4)
        pop = run.initialization()
        while run.not_terminated(pop):
            pop = run.variation(pop)
        generations = [s.generation for s in run.snapshots]
        assert generations == [0, 4, 8, 9]


class TestVariation:
    def test_identity_parameters(self):
        run = make_run(function_params={"EAreal": (0.0, 15.0, 0.0, 15.0)})
        pop = run.initialization(10)
        children = run.variation(pop)
        assert np.array_equal(
            np.array([c.dec for c in children]), np.array([p.dec for p in pop])
        )

    def test_size_convention(self):
        run = make_run()
        pop = run.initialization(100)
        assert len(run.variation(pop)) == 100

    def test_offspring_objectives_match_reevaluation(self):
        run = make_run()
        pop = run.initialization(20)
        children = run.variation(pop)
        dec = np.array([c.dec for c in children])
        obj, _ = run.problem.evaluate(dec)
        assert np.array_equal(objectives_of(children), obj)

    def test_count_truncation(self):
        run = make_run()
        pop = run.initialization(10)
        assert len(run.variation(pop, count=3)) == 3

    def test_empty_parents_rejected(self):
        run = make_run()
        with pytest.raises(ValueError):
            run.variation([])


class TestParameterSet:
    def test_defaults_used(self):
        run = make_run()
        assert run.parameter_set("EAreal", (1, 15, 1, 15)) == (1, 15, 1, 15)

    def test_full_override(self):
        run = make_run(function_params={"EAreal": (1, 20, 1, 20)})
        assert run.parameter_set("EAreal", (1, 15, 1, 15)) == (1, 20, 1, 20)

    def test_partial_override(self):
        run = make_run(function_params={"KnEAish": (0.5,)})
        assert run.parameter_set("KnEAish", (0.4, 7.0)) == (0.5, 7.0)

    def test_case_insensitive_lookup(self):
        run = make_run(function_params={"eareal": (1, 22, 1, 22)})
        assert run.parameter_set("EAreal", (1, 15, 1, 15)) == (1, 22, 1, 22)

    def test_too_many_values(self):
        run = make_run(function_params={"EAreal": (1, 2, 3, 4, 5)})
        with pytest.raises(ConfigurationError):
            run.parameter_set("EAreal", (1, 15, 1, 15))


class TestDecoupling:
    """The kernel must work against stub registrations only."""

    @classmethod
    def setup_class(cls):
        @registry.register("problem", "StubSphere", description="stub")
        def stub_problem(m, d):
            from moealab.problems.base import ProblemDefinition

            m = m or 2
            d = d or 3
            return ProblemDefinition(
                name="StubSphere", m=m, d=d,
                lower=np.zeros(d), upper=np.ones(d),
                evaluator=lambda x: (
                    np.column_stack([np.sum(x**2, axis=1)] * m),
                    np.empty((len(x), 0)),
                ),
                pf_sampler=lambda count: np.zeros((1, m)),
            )

        @registry.register("operator", "StubCopy", encoding="real", params=[])
        def stub_operator(parents, lower, upper, params, rng):
            return parents.copy()

        @registry.register("algorithm", "StubLoop", description="stub")
        def stub_algorithm(run):
            pop = run.initialization()
            while run.not_terminated(pop):
                pop = run.variation(pop)

    def test_kernel_runs_on_stubs(self):
        config = RunConfig(
            algorithm="StubLoop", problem="StubSphere", operator="StubCopy",
            n=5, max_evaluations=25, seed=1,
        )
        result = execute(config)
        assert len(result.final_population) == 5
        assert result.snapshots[-1].evaluations == 25
        assert [s.generation for s in result.snapshots] == [0, 1, 2, 3, 4]

    def test_ledger_monotone_across_operations(self):
        run = make_run()
        seen = [run.ledger.consumed]
        pop = run.initialization(10)
        seen.append(run.ledger.consumed)
        run.not_terminated(pop)
        seen.append(run.ledger.consumed)
        run.variation(pop)
        seen.append(run.ledger.consumed)
        assert seen == sorted(seen)
