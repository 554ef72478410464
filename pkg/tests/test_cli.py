"""End-to-end command line behavior via subprocess."""

import csv
import json

import pytest

from conftest import run_cli


def classify_json(*argv):
    proc = run_cli("classify", *argv, "--json")
    assert proc.stdout.strip()
    return proc, json.loads(proc.stdout)


class TestClassifyCommand:
    def test_flagship_json(self):
        proc, doc = classify_json("--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2")
        assert proc.returncode == 0
        assert doc["verdict"] == "not_almost_universal"
        assert doc["case"] == "C"
        assert doc["tau"] == 5
        assert doc["conditions"] == {"i": True, "ii": True, "iii": True, "iv": True}

    def test_unscaled_json(self):
        proc, doc = classify_json("--a", "1", "--b", "1", "--c", "5", "--r", "0", "--s", "0")
        assert proc.returncode == 0
        assert doc["verdict"] == "almost_universal"
        assert doc["case"] == "D"

    def test_star_violation_exit_code(self):
        proc, doc = classify_json("--a", "1", "--b", "1", "--c", "1", "--r", "0", "--s", "0")
        assert proc.returncode == 2
        assert doc["verdict"] == "invalid_params"
        assert doc["reason"] == "star_violation"

    def test_text_output(self):
        proc = run_cli("classify", "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2")
        assert proc.returncode == 0
        assert "verdict: not_almost_universal" in proc.stdout
        assert "case: C" in proc.stdout

    def test_literal_flag(self):
        _, doc = classify_json(
            "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2", "--literal-sf"
        )
        assert doc["literal_sf"] is True
        assert doc["tau"] == 5
        _, plain = classify_json(
            "--a", "3", "--b", "1", "--c", "1", "--r", "1", "--s", "1", "--literal-sf"
        )
        assert plain["literal_sf"] is True
        assert plain["verdict"] == "almost_universal"

    def test_usage_error(self):
        proc = run_cli("classify", "--a", "5")
        assert proc.returncode == 1


class TestCheckCommand:
    def test_witness_found(self):
        proc = run_cli(
            "check", "--a", "1", "--b", "1", "--c", "5", "--r", "0", "--s", "0",
            "--n", "1", "--json",
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        w = doc["witness"]
        assert w is not None
        units = w["units"]
        total = 1 * units[0] ** 2 + 1 * units[1] ** 2 + 5 * units[2] ** 2
        assert total == 24 * 1 + 7

    def test_no_witness_exit_three(self):
        proc = run_cli(
            "check", "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2",
            "--n", "2",
        )
        assert proc.returncode == 3
        assert "no admissible representation" in proc.stdout


class TestExceptionsCommand:
    def test_stream_rows_and_figure(self, tmp_path):
        out = tmp_path / "exc.jsonl"
        proc = run_cli(
            "exceptions", "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2",
            "--limit", "2000", "--out", str(out),
        )
        assert proc.returncode == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert rows
        by_n = {row["n"]: row for row in rows}
        assert by_n[2]["l_n"] == 125
        assert by_n[2]["k"] == 5
        for row in rows:
            assert row["l_n"] == 24 * row["n"] + 77
            if row["k"] is not None:
                assert 5 * row["k"] ** 2 == row["l_n"]
        figure = out.with_suffix(".png")
        assert figure.exists() and figure.stat().st_size > 0

    def test_no_plot_suppresses_figure(self, tmp_path):
        out = tmp_path / "exc.jsonl"
        proc = run_cli(
            "exceptions", "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2",
            "--limit", "2000", "--out", str(out), "--no-plot",
        )
        assert proc.returncode == 0
        assert not out.with_suffix(".png").exists()

    def test_resource_cap_exit_four(self, tmp_path):
        out = tmp_path / "exc.jsonl"
        proc = run_cli(
            "exceptions", "--a", "5", "--b", "9", "--c", "9", "--r", "2", "--s", "2",
            "--limit", "100000", "--out", str(out),
            env={"PENTAFORM_MAX_BITMAP": "64"},
        )
        assert proc.returncode == 4


def read_scan(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


class TestScanCommand:
    def test_small_scan_deterministic_and_sorted(self, tmp_path):
        out1 = tmp_path / "scan1.jsonl"
        out2 = tmp_path / "scan2.jsonl"
        base = ["scan", "--max-abc", "5", "--max-s", "2", "--limit", "20000", "--no-plot"]
        proc1 = run_cli(*base, "--out", str(out1), "--jobs", "1")
        proc2 = run_cli(*base, "--out", str(out2), "--jobs", "2")
        assert proc1.returncode == 0
        assert proc2.returncode == 0
        assert out1.read_bytes() == out2.read_bytes()
        records = read_scan(out1)
        assert records
        keys = [(r["a"], r["b"], r["c"], r["r"], r["s"]) for r in records]
        assert keys == sorted(keys)
        for rec in records:
            assert rec["verdict"] in {"almost_universal", "not_almost_universal"}
            assert rec["empirical"] in {"likely_au", "likely_not_au", "inconclusive"}

    def test_flagship_record_content(self, tmp_path):
        out = tmp_path / "scan.jsonl"
        proc = run_cli(
            "scan", "--max-abc", "9", "--max-s", "2", "--limit", "20000",
            "--out", str(out), "--no-plot",
        )
        assert proc.returncode == 0
        records = read_scan(out)
        flagship = [
            r for r in records
            if (r["a"], r["b"], r["c"], r["r"], r["s"]) == (5, 9, 9, 2, 2)
        ]
        assert len(flagship) == 1
        rec = flagship[0]
        assert rec["verdict"] == "not_almost_universal"
        assert rec["case"] == "C"
        assert rec["tau"] == 5
        assert rec["empirical"] == "likely_not_au"
        assert rec["exception_count"] > 0

    def test_csv_export_matches_jsonl(self, tmp_path):
        out_json = tmp_path / "scan.jsonl"
        out_csv = tmp_path / "scan.csv"
        base = ["scan", "--max-abc", "3", "--max-s", "2", "--limit", "20000", "--no-plot"]
        assert run_cli(*base, "--out", str(out_json)).returncode == 0
        assert run_cli(*base, "--out", str(out_csv), "--format", "csv").returncode == 0
        records = read_scan(out_json)
        with open(out_csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == len(records)
        for rec, row in zip(records, rows):
            assert int(row["a"]) == rec["a"]
            assert row["verdict"] == rec["verdict"]
            assert int(row["exception_count"]) == rec["exception_count"]

    def test_summary_figure_rendered(self, tmp_path):
        out = tmp_path / "scan.jsonl"
        proc = run_cli(
            "scan", "--max-abc", "3", "--max-s", "1", "--limit", "20000",
            "--out", str(out),
        )
        assert proc.returncode == 0
        figure = out.with_suffix(".png")
        assert figure.exists() and figure.stat().st_size > 0

    def test_timing_column_optional(self, tmp_path):
        out = tmp_path / "scan.jsonl"
        proc = run_cli(
            "scan", "--max-abc", "3", "--max-s", "1", "--limit", "20000",
            "--out", str(out), "--no-plot", "--timing",
        )
        assert proc.returncode == 0
        records = read_scan(out)
        assert all("elapsed_ms" in rec for rec in records)
