import json
import subprocess
import sys
from pathlib import Path

import pytest

from contextuality import scenario

FIXTURES = Path(__file__).parent / "fixtures"
SAMPLE = FIXTURES / "sample_records.jsonl"


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "contextuality.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestAnalyze:
    def test_writes_report(self, tmp_path):
        n_records = len(SAMPLE.read_text().strip().splitlines())
        result = run_cli("analyze", str(SAMPLE), "--out", str(tmp_path))
        assert result.returncode == 0, result.stderr
        lines = (tmp_path / "report.csv").read_text().splitlines()
        assert lines[0] == "id,sf,delta,cf,cnt1,sheaf,cbd,error"
        assert len(lines) == n_records + 1

    def test_byte_identical_across_runs_and_thread_counts(self, tmp_path):
        outputs = []
        for name, jobs in (("a", "1"), ("b", "1"), ("c", "4")):
            out = tmp_path / name
            result = run_cli("analyze", str(SAMPLE), "--out", str(out), "--jobs", jobs)
            assert result.returncode == 0, result.stderr
            outputs.append((out / "report.csv").read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_malformed_line_warns_but_continues(self, tmp_path):
        data = tmp_path / "records.jsonl"
        data.write_text(
            json.dumps(
                {"id": "ok", "nouns": ["a", "b"], "adjectives": ["x", "y", "z"], "p_first": [0.5, 0.5, 0.5]}
            )
            + "\nnot json\n"
        )
        result = run_cli("analyze", str(data), "--out", str(tmp_path))
        assert result.returncode == 0
        assert "line 2" in result.stderr

    def test_strict_mode_exits_2(self, tmp_path):
        data = tmp_path / "records.jsonl"
        data.write_text("not json\n")
        result = run_cli("analyze", str(data), "--strict", "--out", str(tmp_path))
        assert result.returncode == 2


class TestStats:
    def test_full_stats_run(self, tmp_path):
        assert run_cli("analyze", str(SAMPLE), "--out", str(tmp_path)).returncode == 0
        result = run_cli(
            "stats",
            "--reports",
            str(tmp_path / "report.csv"),
            "--records",
            str(SAMPLE),
            "--out",
            str(tmp_path),
            "--degrees",
            "1..3",
            "--grid-bins",
            "50",
        )
        assert result.returncode == 0, result.stderr
        for name in (
            "histogram_sf.csv",
            "histogram_delta.csv",
            "grid_sf_delta.csv",
            "correlations.csv",
            "r2.csv",
            "similarity_sweep.csv",
        ):
            assert (tmp_path / name).exists(), name
        grid = (tmp_path / "grid_sf_delta.csv").read_text().splitlines()
        assert len(grid) == 50 * 50 + 1
        r2 = (tmp_path / "r2.csv").read_text().splitlines()
        # 5 features x 2 targets x 3 degrees
        assert len(r2) == 5 * 2 * 3 + 1
        assert "sheaf fraction" in result.stdout

    def test_stats_deterministic(self, tmp_path):
        run_cli("analyze", str(SAMPLE), "--out", str(tmp_path / "rep"))
        blobs = []
        for name in ("s1", "s2"):
            out = tmp_path / name
            result = run_cli(
                "stats",
                "--reports",
                str(tmp_path / "rep" / "report.csv"),
                "--records",
                str(SAMPLE),
                "--out",
                str(out),
                "--grid-bins",
                "20",
            )
            assert result.returncode == 0, result.stderr
            blobs.append(b"".join((out / n).read_bytes() for n in sorted(p.name for p in out.iterdir())))
        assert blobs[0] == blobs[1]


class TestSchemaRender:
    def test_running_example(self):
        result = run_cli("schema", "render", "--nouns", "apple,strawberry", "--adjectives", "red,round,sweet")
        assert result.returncode == 0
        lines = result.stdout.strip().split("\n")
        assert lines == [
            "There is an apple and a strawberry. The [MASK] is red and the same one is round.",
            "There is an apple and a strawberry. The [MASK] is round and the same one is sweet.",
            "There is an apple and a strawberry. The [MASK] is sweet and the other one is red.",
        ]

    def test_bad_arity_is_usage_error(self):
        result = run_cli("schema", "render", "--nouns", "apple", "--adjectives", "red,round,sweet")
        assert result.returncode == 1


class TestInspect:
    def test_pr_prism_file(self, tmp_path, pr_prism):
        path = tmp_path / "prism.json"
        path.write_text(scenario.to_json(pr_prism))
        result = run_cli("inspect", str(path))
        assert result.returncode == 0
        assert "strongly_contextual: True" in result.stdout
        assert "cf: 1.0" in result.stdout
        assert "sf: 0.0" in result.stdout
        assert "cnt1: 2.0" in result.stdout

    def test_support_eps_changes_verdict(self, tmp_path, cycle3):
        tiny = 1e-13
        rows = [[0.5, tiny, 0.0, 0.5 - tiny], [0.5, 0.0, 0.0, 0.5], [0.0, 0.5, 0.5, 0.0]]
        noisy = scenario.model_from_rows(cycle3, rows)
        path = tmp_path / "noisy.json"
        path.write_text(scenario.to_json(noisy))
        default_run = run_cli("inspect", str(path))
        assert "strongly_contextual: False" in default_run.stdout
        thresholded = run_cli("inspect", str(path), "--support-eps", "1e-9")
        assert "strongly_contextual: True" in thresholded.stdout

    def test_missing_file_is_data_error(self):
        assert run_cli("inspect", "/nonexistent/model.json").returncode == 2


class TestSelftest:
    def test_passes_with_exit_zero(self):
        result = run_cli("selftest", "--seed", "0", "--trials", "25")
        assert result.returncode == 0
        assert "selftest passed" in result.stdout

    def test_zero_trials_is_usage_error(self):
        assert run_cli("selftest", "--trials", "0").returncode == 1

    def test_unknown_command_is_usage_error(self):
        assert run_cli("frobnicate").returncode == 1
