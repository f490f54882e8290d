import json
import subprocess
import sys
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "anaphora_extractor.cli", *args], capture_output=True, text=True
    )


class TestExtractCli:
    def test_full_run_writes_records(self, tmp_path):
        out = tmp_path / "records.jsonl"
        result = run_cli(
            str(FIXTURES / "mini_corpus.txt"),
            "--model",
            str(FIXTURES / "tiny_model"),
            "--out",
            str(out),
        )
        assert result.returncode == 0, result.stderr
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 156
        assert "wrote 156 records" in result.stderr
        record = json.loads(lines[0])
        assert set(record) == {"id", "nouns", "adjectives", "p_first", "raw", "features"}

    def test_limit_caps_instances(self, tmp_path):
        out = tmp_path / "records.jsonl"
        result = run_cli(
            str(FIXTURES / "mini_corpus.txt"),
            "--model",
            str(FIXTURES / "tiny_model"),
            "--out",
            str(out),
            "--limit",
            "7",
        )
        assert result.returncode == 0
        assert len(out.read_text().strip().split("\n")) == 7

    def test_runs_are_deterministic(self, tmp_path):
        blobs = []
        for name in ("a.jsonl", "b.jsonl"):
            out = tmp_path / name
            result = run_cli(
                str(FIXTURES / "mini_corpus.txt"),
                "--model",
                str(FIXTURES / "tiny_model"),
                "--out",
                str(out),
                "--limit",
                "30",
            )
            assert result.returncode == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_directory_corpus(self, tmp_path):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "one.txt").write_text("The red apple fell. The red strawberry fell.")
        (corpus / "two.txt").write_text(
            "A sweet apple lay there. A sweet strawberry lay there. "
            "The round apple rolled. The round strawberry rolled."
        )
        out = tmp_path / "records.jsonl"
        result = run_cli(str(corpus), "--model", str(FIXTURES / "tiny_model"), "--out", str(out))
        assert result.returncode == 0, result.stderr
        # one pair sharing exactly 3 adjectives -> 6 instances
        assert len(out.read_text().strip().split("\n")) == 6

    def test_missing_corpus_fails(self):
        assert run_cli("/nonexistent/corpus.txt").returncode == 1
