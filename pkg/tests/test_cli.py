import csv

import numpy as np
import pytest

from qubit_tomo import parse_dump
from qubit_tomo.cli import main
from qubit_tomo.experiments import AGGREGATE_HEADER


def run_cli(*argv):
    return main(list(argv))


class TestSimulate:
    def test_writes_dump(self, tmp_path):
        out = tmp_path / "data.txt"
        code = run_cli(
            "simulate", "--true-state", "0,0,1", "--n-values", "6",
            "--seed", "42", "--out", str(out),
        )
        assert code == 0
        data, seed = parse_dump(out.read_text())
        assert data.n == 6
        assert seed.seed == 42
        assert np.all(data.outcomes[2] == 1)

    def test_stdout_dump(self, capsys):
        assert run_cli("simulate", "--true-state", "0,0,0", "--n-values", "4", "--seed", "1") == 0
        out = capsys.readouterr().out
        assert out.startswith("axis=1 n=4 seed=1:0")

    def test_missing_state_fails(self, capsys):
        assert run_cli("simulate", "--n-values", "4") == 1
        assert "true-state" in capsys.readouterr().err


class TestEstimate:
    def test_prints_three_methods(self, capsys):
        code = run_cli(
            "estimate", "--true-state", "0.3,-0.4,0.3", "--n-values", "20", "--seed", "9",
        )
        assert code == 0
        out = capsys.readouterr().out
        for method in ("LS:", "BayesUnconditioned:", "BayesConditioned:"):
            assert method in out
        assert "fidelity=" in out

    def test_reads_dump_file(self, tmp_path, capsys):
        dump = tmp_path / "d.txt"
        run_cli("simulate", "--true-state", "0.3,-0.4,0.3", "--n-values", "20",
                "--seed", "9", "--out", str(dump))
        capsys.readouterr()
        code = run_cli("estimate", "--data", str(dump))
        assert code == 0
        out = capsys.readouterr().out
        assert "LS:" in out and "fidelity=" not in out  # truth unknown

    def test_writes_rep_csv(self, tmp_path):
        out = tmp_path / "est.csv"
        run_cli("estimate", "--true-state", "0.3,-0.4,0.3", "--n-values", "20",
                "--seed", "9", "--out", str(out))
        with open(out, newline="") as f:
            rows = list(csv.reader(f))
        assert len(rows) == 4
        assert rows[1][0] == "LS"


class TestSweeps:
    def test_sweep_n_writes_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = run_cli(
            "sweep-n", "--true-state", "0.3,-0.4,0.3", "--n-values", "5,10",
            "--reps", "2", "--seed", "3", "--out", str(out),
        )
        assert code == 0
        with open(out, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == AGGREGATE_HEADER
        assert len(rows) == 1 + 6

    def test_sweep_n_emit_reps(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(
            "sweep-n", "--true-state", "0.3,-0.4,0.3", "--n-values", "5",
            "--reps", "2", "--seed", "3", "--out", str(out), "--emit-reps",
        )
        assert (tmp_path / "sweep.reps.csv").exists()

    def test_sweep_length(self, tmp_path):
        out = tmp_path / "len.csv"
        code = run_cli(
            "sweep-length", "--direction", "1,1,1", "--lengths", "0.2,0.8",
            "--n-values", "30", "--reps", "2", "--seed", "3", "--out", str(out),
        )
        assert code == 0
        with open(out, newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 6
        assert {r["kind"] for r in rows} == {"sweep_length"}
        assert {r["length"] for r in rows} == {"0.2", "0.8"}

    def test_identical_invocations_identical_bytes(self, tmp_path):
        args = [
            "sweep-n", "--true-state", "0.3,-0.4,0.3", "--n-values", "5,10",
            "--reps", "3", "--seed", "7",
        ]
        blobs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            run_cli(*args, "--out", str(out))
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]


class TestConfigFile:
    def test_file_supplies_options(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "# low-n sweep\n"
            "true-state = 0.3,-0.4,0.3\n"
            "n-values = 5,10\n"
            "reps = 2\n"
            "seed = 3\n"
        )
        out = tmp_path / "sweep.csv"
        assert run_cli("sweep-n", "--config", str(cfg), "--out", str(out)) == 0
        with open(out, newline="") as f:
            rows = list(csv.DictReader(f))
        assert sorted({int(r["n"]) for r in rows}) == [5, 10]

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("true-state = 0.3,-0.4,0.3\nn-values = 5,10\nreps = 2\nseed = 3\n")
        out = tmp_path / "sweep.csv"
        run_cli("sweep-n", "--config", str(cfg), "--n-values", "20", "--out", str(out))
        with open(out, newline="") as f:
            rows = list(csv.DictReader(f))
        assert {int(r["n"]) for r in rows} == {20}

    def test_bad_config_line_fails(self, tmp_path, capsys):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("reps 2\n")
        assert run_cli("sweep-n", "--config", str(cfg), "--out", "x.csv") == 1
        assert "key = value" in capsys.readouterr().err

    def test_prior_and_domain_flags(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = run_cli(
            "sweep-n", "--true-state", "0.3,-0.4,0.3", "--n-values", "10",
            "--reps", "2", "--seed", "3", "--prior-kappa", "2", "--prior-lambda", "1",
            "--grid-points", "64", "--conditioning-domain", "paper-u",
            "--out", str(out),
        )
        assert code == 0
