import json
import shutil
from pathlib import Path

import numpy as np
import pytest

from lupus.cli import main

BENCH_SMALL = ["bench", "--functions", "f1", "--dims", "4", "--algs", "gwo,acgwo",
               "--runs", "2", "--agents", "5", "--iters", "15", "--seed", "42"]
TRAIN_SMALL = ["train", "--mode", "acgwo-bp", "--swarm", "10", "--iters", "30",
               "--bp-epochs", "20", "--learning-rate", "0.1", "--seed", "3"]


@pytest.fixture()
def workdir(tmp_path, monkeypatch, heart_csv):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "data").mkdir()
    shutil.copy(heart_csv, tmp_path / "data" / "heart.csv")
    return tmp_path


def run_cli(args):
    return main(list(args))


class TestCurvesCommand:
    def test_schedule_dump(self, workdir):
        assert run_cli(["curves"]) == 0
        lines = Path("results/curves.csv").read_text().splitlines()
        assert lines[0] == "iter,wa,ww,fi_unit"
        assert len(lines) == 1002
        first = lines[1].split(",")
        last = lines[-1].split(",")
        assert float(first[2]) == pytest.approx(2.336620, abs=1e-6)
        assert float(last[1]) == 0.0
        ww = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(b < a for a, b in zip(ww, ww[1:]))

    def test_rerun_byte_identical(self, workdir):
        assert run_cli(["curves", "--iters", "100"]) == 0
        first = Path("results/curves.csv").read_bytes()
        assert run_cli(["curves", "--iters", "100"]) == 0
        assert Path("results/curves.csv").read_bytes() == first

    def test_invalid_iters_exit_one(self, workdir):
        assert run_cli(["curves", "--iters", "0"]) == 1


class TestBenchCommand:
    def test_small_sweep(self, workdir):
        assert run_cli(BENCH_SMALL) == 0
        lines = Path("results/table.csv").read_text().splitlines()
        assert len(lines) == 3  # header + one row per (alg, fn, dim)
        series = sorted(Path("results/convergence").glob("*.csv"))
        assert [p.name for p in series] == [
            "acgwo_f1_4_0.csv", "acgwo_f1_4_1.csv", "gwo_f1_4_0.csv", "gwo_f1_4_1.csv"]
        assert len(series[0].read_text().splitlines()) == 16

    def test_rerun_byte_identical(self, workdir):
        assert run_cli(BENCH_SMALL) == 0
        table = Path("results/table.csv").read_bytes()
        series = {p.name: p.read_bytes() for p in Path("results/convergence").glob("*.csv")}
        assert run_cli(BENCH_SMALL) == 0
        assert Path("results/table.csv").read_bytes() == table
        for p in Path("results/convergence").glob("*.csv"):
            assert p.read_bytes() == series[p.name]

    def test_unknown_function_names_id(self, workdir, capsys):
        assert run_cli(["bench", "--functions", "f77"]) == 1
        assert "f77" in capsys.readouterr().err

    def test_usage_error_exit_one(self, workdir):
        assert run_cli(["bench", "--runs", "notanint"]) == 1

    def test_seed_changes_results(self, workdir):
        assert run_cli(BENCH_SMALL) == 0
        first = Path("results/table.csv").read_bytes()
        assert run_cli(BENCH_SMALL[:-1] + ["43"]) == 0
        assert Path("results/table.csv").read_bytes() != first

    def test_env_seed_matches_flag_seed(self, workdir, monkeypatch):
        assert run_cli(BENCH_SMALL) == 0
        flagged = Path("results/table.csv").read_bytes()
        monkeypatch.setenv("LUPUS_SEED", "42")
        assert run_cli(BENCH_SMALL[:-2]) == 0
        assert Path("results/table.csv").read_bytes() == flagged

    def test_config_file_overrides_env_but_not_flag(self, workdir, monkeypatch):
        Path("cfg.json").write_text(json.dumps({"bench": {"iters": 15}, "seed": 42}))
        monkeypatch.setenv("LUPUS_SEED", "7")
        base = [a for a in BENCH_SMALL if a not in ("--iters", "15", "--seed", "42")]
        assert run_cli(base + ["--config", "cfg.json"]) == 0
        from_config = Path("results/table.csv").read_bytes()
        assert run_cli(BENCH_SMALL) == 0
        assert Path("results/table.csv").read_bytes() == from_config


class TestEdaCommand:
    def test_outputs(self, workdir):
        assert run_cli(["eda"]) == 0
        corr = Path("results/corr.csv").read_text().splitlines()
        assert len(corr) == 15  # label row + 14 rows
        header = corr[0].split(",")
        assert header[0] == "" and header[-1] == "target"
        matrix = np.array([[float(v) for v in line.split(",")[1:]] for line in corr[1:]])
        assert matrix.shape == (14, 14)
        assert np.array_equal(matrix, matrix.T)
        assert np.all(np.diag(matrix) == 1.0)
        clean_lines = Path("data/clean.csv").read_text().splitlines()
        assert len(clean_lines) == 298  # header + 297 rows

    def test_missing_file_exit_two(self, workdir):
        assert run_cli(["eda", "--data", "data/nope.csv"]) == 2

    def test_rerun_byte_identical(self, workdir):
        assert run_cli(["eda"]) == 0
        first = Path("results/corr.csv").read_bytes()
        assert run_cli(["eda"]) == 0
        assert Path("results/corr.csv").read_bytes() == first


class TestTrainCommand:
    def test_hybrid_small(self, workdir):
        assert run_cli(TRAIN_SMALL) == 0
        model = json.loads(Path("results/model.json").read_text())
        assert model["layer_sizes"] == [13, 16, 1]
        assert model["mode"] == "hybrid"
        report = json.loads(Path("results/train_report.json").read_text())
        assert len(report["loss_history"]) == 30 + 20
        assert 0.0 <= report["test_metrics"]["accuracy"] <= 1.0

    def test_bp_mode_writes_valid_model(self, workdir):
        assert run_cli(["train", "--mode", "bp", "--bp-epochs", "20",
                        "--learning-rate", "0.5", "--seed", "1"]) == 0
        model = json.loads(Path("results/model.json").read_text())
        assert model["mode"] == "bp"

    def test_acgwo_mode(self, workdir):
        assert run_cli(["train", "--mode", "acgwo", "--swarm", "8",
                        "--iters", "20", "--seed", "2"]) == 0
        report = json.loads(Path("results/train_report.json").read_text())
        assert report["mode"] == "acgwo"
        losses = report["loss_history"]
        assert all(b <= a for a, b in zip(losses, losses[1:]))

    def test_missing_dataset_exit_two(self, workdir):
        assert run_cli(TRAIN_SMALL + ["--data", "data/nope.csv"]) == 2

    def test_rerun_byte_identical(self, workdir):
        assert run_cli(TRAIN_SMALL) == 0
        model = Path("results/model.json").read_bytes()
        report = Path("results/train_report.json").read_bytes()
        assert run_cli(TRAIN_SMALL) == 0
        assert Path("results/model.json").read_bytes() == model
        assert Path("results/train_report.json").read_bytes() == report

    def test_one_hot_expands_input_layer(self, workdir):
        assert run_cli(["train", "--mode", "bp", "--bp-epochs", "5",
                        "--one-hot", "--seed", "1"]) == 0
        model = json.loads(Path("results/model.json").read_text())
        assert model["layer_sizes"][0] > 13


class TestEvalCommand:
    def test_reproduces_training_metrics(self, workdir):
        assert run_cli(TRAIN_SMALL) == 0
        trained = json.loads(Path("results/train_report.json").read_text())
        assert run_cli(["eval"]) == 0
        evaluated = json.loads(Path("results/eval.json").read_text())
        assert evaluated == trained["test_metrics"]
        csv_lines = Path("results/eval.csv").read_text().splitlines()
        assert csv_lines[0] == "ACC,AUC,PRE,Recall,F1"
        assert float(csv_lines[1].split(",")[0]) == evaluated["accuracy"]

    def test_corrupted_model_exit_two(self, workdir):
        Path("results").mkdir(exist_ok=True)
        Path("results/model.json").write_text("{broken")
        assert run_cli(["eval"]) == 2

    def test_missing_model_exit_two(self, workdir):
        assert run_cli(["eval", "--model", "results/absent.json"]) == 2

    def test_feature_width_mismatch_exit_two(self, workdir):
        assert run_cli(["train", "--mode", "bp", "--bp-epochs", "2",
                        "--one-hot", "--seed", "1"]) == 0
        assert run_cli(["eval"]) == 2


class TestHelp:
    @pytest.mark.parametrize("cmd", ["bench", "curves", "train", "eval", "eda"])
    def test_help_lists_defaults(self, cmd, capsys):
        assert run_cli([cmd, "--help"]) == 0
        out = capsys.readouterr().out
        assert "default" in out

    def test_train_help_shows_reference_defaults(self, capsys):
        run_cli(["train", "--help"])
        out = capsys.readouterr().out
        assert "100" in out and "1000" in out and "0.7" in out

    def test_unknown_subcommand_exit_one(self):
        assert run_cli(["frobnicate"]) == 1
