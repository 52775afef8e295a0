import numpy as np
import pytest

from lupus import harness
from lupus.errors import ConfigError
from lupus.harness import (
    ExperimentPlan,
    StatRow,
    export_convergence,
    export_table,
    format_scientific,
    run_plan,
    run_single,
)
from lupus.seeding import derive_seed

SMALL = dict(dims=(4,), n_runs=2, n_agents=5, max_iter=15)


class TestPlanValidation:
    def test_unknown_algorithm_named(self):
        with pytest.raises(ConfigError, match="zwo"):
            ExperimentPlan(algorithms=("zwo",), functions=("f1",), dims=(5,))

    def test_unknown_function_named(self):
        with pytest.raises(ConfigError, match="f99"):
            ExperimentPlan(algorithms=("gwo",), functions=("f99",), dims=(5,))

    def test_runs_must_be_positive(self):
        with pytest.raises(ConfigError):
            ExperimentPlan(algorithms=("gwo",), functions=("f1",), dims=(5,), n_runs=0)

    def test_dims_must_be_positive(self):
        with pytest.raises(ConfigError):
            ExperimentPlan(algorithms=("gwo",), functions=("f1",), dims=(0,))


class TestDerivedSeeds:
    def test_stable_and_distinct(self):
        a = derive_seed(42, "gwo", "f1", 30, 0)
        assert a == derive_seed(42, "gwo", "f1", 30, 0)
        assert a != derive_seed(42, "gwo", "f1", 30, 1)
        assert a != derive_seed(43, "gwo", "f1", 30, 0)
        assert 0 <= a < 2 ** 64


class TestRunPlan:
    def test_single_run_std_zero(self):
        plan = ExperimentPlan(algorithms=("gwo",), functions=("f1",),
                              dims=(3,), n_runs=1, n_agents=5, max_iter=10)
        rows = run_plan(plan).rows
        assert len(rows) == 1
        assert rows[0].std == 0.0

    def test_deterministic(self):
        plan = ExperimentPlan(algorithms=("gwo", "pso"), functions=("f1", "f5"),
                              **SMALL)
        a = run_plan(plan)
        b = run_plan(plan)
        assert a.rows == b.rows
        for key in a.histories:
            assert np.array_equal(a.histories[key], b.histories[key])

    def test_cell_independence(self):
        wide = ExperimentPlan(algorithms=("gwo", "acgwo"), functions=("f1", "f3"),
                              **SMALL)
        narrow = ExperimentPlan(algorithms=("acgwo",), functions=("f3",), **SMALL)
        wide_result = run_plan(wide)
        narrow_result = run_plan(narrow)
        for key, history in narrow_result.histories.items():
            assert np.array_equal(history, wide_result.histories[key])

    def test_rows_match_recomputation_from_finals(self):
        plan = ExperimentPlan(algorithms=("gwo",), functions=("f1", "f6"), **SMALL)
        result = run_plan(plan)
        for row in result.rows:
            finals = result.finals(row.algorithm, row.function, row.dim)
            assert row.mean == float(finals.mean())
            assert row.std == float(finals.std())
            assert row.n_runs == finals.size

    def test_worker_pool_matches_serial(self):
        plan = ExperimentPlan(algorithms=("gwo", "pso"), functions=("f1",), **SMALL)
        serial = run_plan(plan, workers=1)
        pooled = run_plan(plan, workers=2)
        assert serial.rows == pooled.rows
        for key in serial.histories:
            assert np.array_equal(serial.histories[key], pooled.histories[key])

    def test_histories_non_increasing(self):
        plan = ExperimentPlan(algorithms=("acgwo", "pso"), functions=("f1",), **SMALL)
        result = run_plan(plan)
        for history in result.histories.values():
            assert np.all(np.diff(history) <= 0)

    def test_run_single_uses_cell_seed(self):
        plan = ExperimentPlan(algorithms=("gwo",), functions=("f1",), **SMALL)
        h = run_single(plan, "gwo", "f1", 4, 1)
        assert h.shape == (15,)
        assert np.array_equal(h, run_single(plan, "gwo", "f1", 4, 1))


class TestDeskScaleOrdering:
    def test_curve_variant_beats_plain_beats_pso_on_f1_f3(self):
        plan = ExperimentPlan(
            algorithms=("gwo", "acgwo", "pso"), functions=("f1", "f3"),
            dims=(30,), n_runs=10, base_seed=42, n_agents=40, max_iter=500,
        )
        means = {(r.algorithm, r.function): r.mean for r in run_plan(plan).rows}
        for fn in ("f1", "f3"):
            assert means[("acgwo", fn)] <= means[("gwo", fn)] <= means[("pso", fn)]


class TestExportTable:
    def test_formatting_mirrors_published_table(self):
        assert format_scientific(0.0) == "0.00E+00"
        assert format_scientific(749.3) == "7.49E+02"
        assert format_scientific(3.51e-2) == "3.51E-02"

    def test_written_table(self, tmp_path):
        rows = [StatRow("pso", "f1", 30, 749.3, 53.7, 10),
                StatRow("acgwo", "f1", 30, 0.0, 0.0, 10)]
        path = tmp_path / "table.csv"
        export_table(rows, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "algorithm,function,dim,mean,std,n_runs"
        assert lines[1] == "pso,f1,30,7.49E+02,5.37E+01,10"
        assert lines[2] == "acgwo,f1,30,0.00E+00,0.00E+00,10"

    def test_empty_rows_rejected_without_file(self, tmp_path):
        path = tmp_path / "table.csv"
        with pytest.raises(ValueError):
            export_table([], path)
        assert not path.exists()


class TestExportConvergence:
    def test_one_row_per_iteration(self, tmp_path):
        plan = ExperimentPlan(algorithms=("gwo",), functions=("f1",),
                              dims=(3,), n_runs=1, n_agents=5, max_iter=20)
        result = run_plan(plan)
        paths = export_convergence(result.histories, tmp_path)
        assert len(paths) == 1
        assert paths[0].name == "gwo_f1_3_0.csv"
        lines = paths[0].read_text().splitlines()
        assert lines[0] == "iter,alpha_score"
        assert len(lines) == 21
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_byte_identical_on_rerun(self, tmp_path):
        plan = ExperimentPlan(algorithms=("acgwo",), functions=("f5",),
                              dims=(2,), n_runs=2, n_agents=5, max_iter=10)
        first = export_convergence(run_plan(plan).histories, tmp_path / "a")
        second = export_convergence(run_plan(plan).histories, tmp_path / "b")
        for p1, p2 in zip(first, second):
            assert p1.read_bytes() == p2.read_bytes()

    def test_empty_histories_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            export_convergence({}, tmp_path)
