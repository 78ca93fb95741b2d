import json
import subprocess
import sys

import numpy as np
import pytest

import lielearn as ll
from lielearn.cli import main

T_MAX = "0.10471975511965977"


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def toy_files(tmp_path, capsys):
    csv = tmp_path / "toy.csv"
    model = tmp_path / "model.json"
    code, _, _ = run_cli(["gen", "--preset", "so2", "--count", "400", "--t-max", T_MAX, "--seed", "42", "-o", str(csv)], capsys)
    assert code == 0
    code, _, _ = run_cli(["train", "-i", str(csv), "-o", str(model), "--seed", "7"], capsys)
    assert code == 0
    return csv, model


class TestGen:
    def test_writes_csv_and_sidecar(self, tmp_path, capsys):
        out = tmp_path / "toy.csv"
        code, stdout, _ = run_cli(
            ["gen", "--preset", "so2", "--count", "1000", "--t-max", T_MAX, "--seed", "42", "-o", str(out)],
            capsys,
        )
        assert code == 0
        line = json.loads(stdout)
        assert line["count"] == 1000 and line["n"] == 2
        rows = out.read_text().strip().splitlines()
        assert len(rows) == 1001
        meta = json.loads((tmp_path / "toy.meta.json").read_text())
        assert meta["t_max"] == float(T_MAX)

    def test_zero_count_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--count", "0", "-o", str(tmp_path / "x.csv")])
        assert exc.value.code == 2

    def test_custom_generator_with_dim(self, tmp_path, capsys):
        gen_path = tmp_path / "gen.json"
        gen_path.write_text(json.dumps(np.diag([1.0, 0.5, -1.0]).tolist()))
        out = tmp_path / "d3.csv"
        code, stdout, _ = run_cli(
            ["gen", "--generator", str(gen_path), "--dim", "3", "--count", "10", "--t-max", "0.1", "-o", str(out)],
            capsys,
        )
        assert code == 0
        assert json.loads(stdout)["n"] == 3
        assert ll.read_dataset(out).n == 3

    def test_dim_mismatch_is_usage_error(self, tmp_path):
        gen_path = tmp_path / "gen.json"
        gen_path.write_text(json.dumps(np.eye(2).tolist()))
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--generator", str(gen_path), "--dim", "3", "--count", "5", "-o", str(tmp_path / "x.csv")])
        assert exc.value.code == 2


class TestTrain:
    def test_produces_model(self, toy_files):
        _, model = toy_files
        payload = json.loads(model.read_text())
        assert payload["n"] == 2
        assert payload["stop_reason"] in ("plateau", "max_epochs")
        assert len(payload["loss_history"]) >= 1

    def test_stdout_json_line(self, tmp_path, capsys):
        csv = tmp_path / "toy.csv"
        run_cli(["gen", "--count", "200", "--seed", "1", "-o", str(csv)], capsys)
        code, stdout, _ = run_cli(["train", "-i", str(csv), "-o", str(tmp_path / "m.json"), "--seed", "3"], capsys)
        assert code == 0
        line = json.loads(stdout)
        assert {"final_risk", "epochs_run", "stop_reason", "model", "risk_per_used", "skipped"} <= set(line)

    def test_rerun_byte_identical(self, tmp_path, capsys):
        csv = tmp_path / "toy.csv"
        run_cli(["gen", "--count", "200", "--seed", "5", "-o", str(csv)], capsys)
        m1, m2 = tmp_path / "m1.json", tmp_path / "m2.json"
        run_cli(["train", "-i", str(csv), "-o", str(m1), "--seed", "7"], capsys)
        run_cli(["train", "-i", str(csv), "-o", str(m2), "--seed", "7"], capsys)
        assert m1.read_bytes() == m2.read_bytes()

    def test_negative_lr_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["train", "-i", str(tmp_path / "toy.csv"), "-o", str(tmp_path / "m.json"), "--lr", "-1"])
        assert exc.value.code == 2


class TestEval:
    def test_alignment_against_truth(self, toy_files, capsys):
        csv, model = toy_files
        code, stdout, _ = run_cli(
            ["eval", "--model", str(model), "-i", str(csv), "--true-generator", "so2"], capsys
        )
        assert code == 0
        report = json.loads(stdout)
        assert report["alignment"] >= 0.99
        assert report["heldout_risk_mean"] <= 2e-3

    def test_holdout_uses_tail_rows(self, toy_files, capsys):
        csv, model = toy_files
        code, stdout, _ = run_cli(
            ["eval", "--model", str(model), "-i", str(csv), "--holdout", "0.2"], capsys
        )
        assert code == 0
        got = json.loads(stdout)["heldout_risk_mean"]
        a, _ = ll.read_model(model)
        tail = ll.read_dataset(csv).tail(80)
        br = ll.empirical_risk(a, tail)
        assert got == pytest.approx(br.total / br.used, rel=1e-12)

    def test_dimension_mismatch_fails(self, toy_files, tmp_path, capsys):
        _, model = toy_files
        gen_path = tmp_path / "gen3.json"
        gen_path.write_text(json.dumps(np.eye(3).tolist()))
        csv3 = tmp_path / "d3.csv"
        run_cli(["gen", "--generator", str(gen_path), "--count", "10", "--t-max", "0.1", "-o", str(csv3)], capsys)
        code, _, err = run_cli(["eval", "--model", str(model), "-i", str(csv3)], capsys)
        assert code == 1
        assert "dimension" in err

    def test_report_file_written(self, toy_files, tmp_path, capsys):
        csv, model = toy_files
        report_path = tmp_path / "report.json"
        code, stdout, _ = run_cli(
            ["eval", "--model", str(model), "-i", str(csv), "-o", str(report_path)], capsys
        )
        assert code == 0
        assert json.loads(report_path.read_text()) == json.loads(stdout)


class TestFigure:
    def test_writes_svg_and_csv(self, toy_files, tmp_path, capsys):
        _, model = toy_files
        svg_path = tmp_path / "fig.svg"
        code, stdout, _ = run_cli(
            ["figure", "--model", str(model), "--point", "1,0", "-o", str(svg_path)], capsys
        )
        assert code == 0
        assert svg_path.exists()
        line = json.loads(stdout)
        csv_path = tmp_path / "fig.orbit.csv"
        assert line["orbit_csv"] == str(csv_path)
        rows = csv_path.read_text().strip().splitlines()
        assert rows[0] == "t,p0,p1"
        assert len(rows) == 361

    def test_bad_point_is_usage_error(self, toy_files, tmp_path):
        _, model = toy_files
        with pytest.raises(SystemExit) as exc:
            main(["figure", "--model", str(model), "--point", "1;0", "-o", str(tmp_path / "f.svg")])
        assert exc.value.code == 2


def test_module_entrypoint_help():
    out = subprocess.run(
        [sys.executable, "-m", "lielearn", "--help"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert "gen" in out.stdout and "train" in out.stdout
