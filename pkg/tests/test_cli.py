import json

import numpy as np
import pytest

from hexknot.action_angle import build_hexagon
from hexknot.cli import main
from hexknot.invariants import KnotClass, classify_batch
from conftest import REGULAR_ANGLES, REGULAR_DIAGONALS, WITNESSES


def run(args):
    return main(args)


class TestSample:
    def test_csv_contract(self, tmp_path, capsys):
        out = tmp_path / "rows.csv"
        assert run(["sample", "--n", "100", "--seed", "7",
                    "--format", "csv", "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "d1,d2,d3,theta1,theta2,theta3"
        assert len(lines) == 101
        values = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        assert values.shape == (100, 6)
        assert (values[:, :3] > 0).all() and (values[:, :3] < 2).all()
        assert (values[:, 3:] >= 0).all() and (values[:, 3:] < 2 * np.pi).all()

    def test_rerun_is_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(["sample", "--n", "200", "--seed", "9", "--output", str(a)])
        run(["sample", "--n", "200", "--seed", "9", "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_vertices_output(self, tmp_path):
        out = tmp_path / "verts.csv"
        run(["sample", "--n", "10", "--seed", "3", "--vertices",
             "--output", str(out)])
        lines = out.read_text().splitlines()
        assert lines[0].startswith("v1x,v1y,v1z")
        row = np.array([float(x) for x in lines[1].split(",")]).reshape(6, 3)
        edges = np.linalg.norm(np.roll(row, -1, axis=0) - row, axis=1)
        assert np.abs(edges - 1.0).max() < 1e-10

    def test_json_format(self, tmp_path):
        out = tmp_path / "rows.json"
        run(["sample", "--n", "5", "--seed", "3", "--format", "json",
             "--output", str(out)])
        payload = json.loads(out.read_text())
        assert len(payload) == 5 and set(payload[0]) == {
            "d1", "d2", "d3", "theta1", "theta2", "theta3"}

    def test_zero_samples_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            run(["sample", "--n", "0"])
        assert err.value.code == 2

    def test_env_seed_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HEXKNOT_SEED", "77")
        # parser defaults are bound at build time, so rebuild via main
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(["sample", "--n", "20", "--output", str(a)])
        run(["sample", "--n", "20", "--output", str(b)])
        monkeypatch.setenv("HEXKNOT_SEED", "78")
        c = tmp_path / "c.csv"
        run(["sample", "--n", "20", "--output", str(c)])
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes() != c.read_bytes()


class TestClassify:
    def test_round_trip_matches_in_memory(self, tmp_path, capsys):
        rows = tmp_path / "rows.csv"
        run(["sample", "--n", "500", "--seed", "21", "--output", str(rows)])
        out = tmp_path / "classified.csv"
        assert run(["classify", "--input", str(rows), "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].endswith(",class")
        data = np.array([[float(x) for x in ln.split(",")[:6]]
                         for ln in lines[1:]])
        codes = classify_batch(build_hexagon(data[:, :3], data[:, 3:]))
        from hexknot.invariants import KNOT_CLASS_LABELS
        expected = [KNOT_CLASS_LABELS[KnotClass(int(c))] for c in codes]
        got = [ln.split(",")[-1] for ln in lines[1:]]
        assert got == expected

    def test_planar_hexagon_vertex_row_is_unknot(self, tmp_path, capsys):
        v = build_hexagon(REGULAR_DIAGONALS, REGULAR_ANGLES).reshape(-1)
        src = tmp_path / "hex.csv"
        src.write_text(",".join(f"{x:.17g}" for x in v) + "\n")
        out = tmp_path / "out.csv"
        run(["classify", "--input", str(src), "--output", str(out)])
        assert out.read_text().splitlines()[1].endswith(",unknot")

    def test_witness_row_classifies(self, tmp_path):
        d, th = WITNESSES["trefoil_R+"]
        src = tmp_path / "w.csv"
        src.write_text("d1,d2,d3,theta1,theta2,theta3\n"
                       + ",".join(f"{x:.17g}" for x in (*d, *th)) + "\n")
        out = tmp_path / "out.csv"
        run(["classify", "--input", str(src), "--output", str(out)])
        assert out.read_text().splitlines()[1].endswith(",trefoil_R+")

    def test_non_interior_row_counts_degenerate(self, tmp_path, capsys):
        src = tmp_path / "bad.csv"
        src.write_text("1.0,1.0,2.0,1.0,1.0,1.0\n"
                       "1.0,1.0,1.0,3.14,3.14,3.14\n")
        out = tmp_path / "out.csv"
        assert run(["classify", "--input", str(src), "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[1].endswith(",degenerate")
        summary = capsys.readouterr().err
        assert "degenerate" in summary

    def test_malformed_row_names_line(self, tmp_path, capsys):
        src = tmp_path / "bad.csv"
        src.write_text("d1,d2,d3,theta1,theta2,theta3\n"
                       "1.0,1.0,1.0,1.0,1.0,1.0\n"
                       "1.0,oops,1.0,1.0,1.0,1.0\n")
        assert run(["classify", "--input", str(src)]) == 1
        assert "line 3" in capsys.readouterr().err

    def test_missing_file_is_runtime_error(self, capsys):
        assert run(["classify", "--input", "/nonexistent/x.csv"]) == 1


class TestEstimate:
    def test_json_report(self, tmp_path):
        out = tmp_path / "report.json"
        assert run(["estimate", "--samples", "100000", "--seed", "2",
                    "--mode", "predicate", "--output", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["samples"] == 100000
        assert payload["mode"] == "predicate"
        assert payload["fraction_total"] == pytest.approx(
            4 * payload["fraction_R_plus"])

    def test_oracle_counts_sum(self, tmp_path):
        out = tmp_path / "report.json"
        run(["estimate", "--samples", "50000", "--seed", "2",
             "--mode", "oracle", "--output", str(out)])
        payload = json.loads(out.read_text())
        assert sum(payload["hits"].values()) == 50000

    def test_repeats_summary(self, tmp_path):
        out = tmp_path / "report.json"
        run(["estimate", "--samples", "20000", "--seed", "2",
             "--repeats", "3", "--output", str(out)])
        payload = json.loads(out.read_text())
        assert len(payload["runs"]) == 3
        assert "std_fraction_R_plus" in payload["across_runs"]

    def test_worker_invariance(self, tmp_path):
        reports = []
        for workers, name in ((1, "a"), (4, "b")):
            out = tmp_path / f"{name}.json"
            run(["estimate", "--samples", "100000", "--seed", "2",
                 "--workers", str(workers), "--output", str(out)])
            payload = json.loads(out.read_text())
            payload.pop("wall_time_seconds")
            payload.pop("workers")
            reports.append(payload)
        assert reports[0] == reports[1]


class TestVolumesAndBound:
    def test_volumes_table(self, capsys):
        assert run(["volumes", "--samples", "200000", "--seed", "5"]) == 0
        text = capsys.readouterr().out
        assert "P6" in text and "torus_acute_window" in text
        assert "largest |z|" in text

    def test_bound_prints_constants(self, capsys):
        assert run(["bound"]) == 0
        text = capsys.readouterr().out
        assert "0.023829281454" in text
        assert "0.023809523810" in text or "0.023809523809" in text
        assert "(14 - 3*pi)/192 > 1/42" in text

    def test_bound_with_estimate(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        run(["estimate", "--samples", "200000", "--seed", "2",
             "--output", str(report)])
        capsys.readouterr()
        assert run(["bound", "--with-estimate", str(report)]) == 0
        text = capsys.readouterr().out
        assert "estimate < upper bound: True" in text

    def test_bound_with_missing_file(self, capsys):
        assert run(["bound", "--with-estimate", "/nonexistent.json"]) == 1


class TestCheck:
    def test_witness_check(self, capsys):
        d, th = WITNESSES["trefoil_R+"]
        args = ["check"] + [f"{x:.17g}" for x in (*d, *th)]
        assert run(args) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["class"] == "trefoil_R+"
        assert payload["filters"]["passes_all"]

    def test_non_interior_tuple(self, capsys):
        assert run(["check", "1", "1", "2", "0", "0", "0"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["class"] == "degenerate"

    def test_target_flag(self, capsys):
        d, th = WITNESSES["trefoil_L-"]
        args = ["check"] + [f"{x:.17g}" for x in (*d, *th)] + ["--target", "trefoil_L-"]
        assert run(args) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["class"] == "trefoil_L-"
        assert payload["filters"]["target"] == "trefoil_L-"
        assert payload["filters"]["passes_all"]
