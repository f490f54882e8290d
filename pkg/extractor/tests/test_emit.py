import io
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from anaphora_extractor.emit import (
    build_record,
    emit_records,
    indefinite_article,
    instance_id,
    render_sentences,
)
from anaphora_extractor.mlm import TokenPrediction
from anaphora_extractor.phrases import Instance, build_instances, extract_phrases

FIXTURES = Path(__file__).parent / "fixtures"


def analysis_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "contextuality.cli", *args], capture_output=True, text=True, **kwargs
    )


class TestRenderSentences:
    def test_articles(self):
        assert indefinite_article("apple") == "an"
        assert indefinite_article("strawberry") == "a"
        assert indefinite_article("Owl") == "an"

    def test_matches_analysis_cli_byte_for_byte(self):
        cases = [
            (("apple", "strawberry"), ("red", "round", "sweet")),
            (("dog", "owl"), ("big", "small", "old")),
            (("house", "cabin"), ("old", "warm", "quiet")),
        ]
        for nouns, adjectives in cases:
            mine = render_sentences(Instance(nouns, adjectives), "[MASK]")
            proc = analysis_cli(
                "schema", "render", "--nouns", ",".join(nouns), "--adjectives", ",".join(adjectives)
            )
            assert proc.returncode == 0
            assert list(mine) == proc.stdout.strip().split("\n")

    def test_mask_token_comes_from_model(self, tiny_model):
        sentences = render_sentences(Instance(("apple", "strawberry"), ("red", "round", "sweet")), tiny_model.mask_token)
        assert all(tiny_model.mask_token in s for s in sentences)


def fake_prediction(pa, pb, dim=4):
    return TokenPrediction(
        candidate_probabilities=(pa, pb),
        candidate_logits=(math.log(pa + 1e-12), math.log(pb + 1e-12)),
        prediction_vector=np.zeros(dim),
        candidate_embeddings=(np.ones(dim), np.zeros(dim)),
        candidate_biases=(0.0, 0.0),
    )


class TestBuildRecord:
    def test_zero_probability_pair_flagged(self, mini_corpus_text):
        inventory = extract_phrases([mini_corpus_text])
        instance = Instance(("apple", "strawberry"), ("red", "round", "sweet"))
        predictions = (fake_prediction(0.0, 0.0), fake_prediction(0.5, 0.5), fake_prediction(0.5, 0.5))
        emitted = build_record(instance, predictions, inventory)
        assert emitted.line is None
        assert "zero probability" in emitted.error

    def test_feature_fields(self, mini_corpus_text):
        inventory = extract_phrases([mini_corpus_text])
        instance = Instance(("apple", "strawberry"), ("red", "round", "sweet"))
        predictions = tuple(fake_prediction(0.3, 0.1) for _ in range(3))
        record = json.loads(build_record(instance, predictions, inventory).line)
        assert record["p_first"] == pytest.approx([0.75, 0.75, 0.75])
        assert record["features"]["euclidean_dist"] == pytest.approx(2.0)  # ||1 - 0|| over dim 4
        assert record["features"]["noun_freqs"] == [
            inventory.noun_counts["apple"],
            inventory.noun_counts["strawberry"],
        ]
        assert record["features"]["adj_freqs"] == [
            inventory.adjective_counts["red"],
            inventory.adjective_counts["round"],
            inventory.adjective_counts["sweet"],
        ]
        # zero second embedding: no cosine defined
        assert "cosine_sim" not in record["features"]


class TestEmitRecords:
    @pytest.fixture(scope="class")
    def emitted(self, tiny_model, mini_corpus_text):
        inventory = extract_phrases([mini_corpus_text], vocabulary=tiny_model.vocabulary_words())
        instances = build_instances(inventory)
        out = io.StringIO()
        errors = io.StringIO()
        written, failed = emit_records(instances, tiny_model, inventory, out, errors)
        return instances, out.getvalue(), written, failed

    def test_every_instance_written(self, emitted):
        instances, text, written, failed = emitted
        assert written == len(instances) == 156
        assert failed == 0
        assert len(text.strip().split("\n")) == written

    def test_ids_unique_and_descriptive(self, emitted):
        instances, text, *_ = emitted
        ids = [json.loads(line)["id"] for line in text.strip().split("\n")]
        assert len(set(ids)) == len(ids)
        assert ids[0] == instance_id(instances[0])

    def test_pairwise_probabilities_normalised(self, emitted):
        _, text, *_ = emitted
        for line in text.strip().split("\n"):
            record = json.loads(line)
            for p, raw in zip(record["p_first"], record["raw"]):
                assert 0.0 < p < 1.0
                assert p == pytest.approx(raw[0] / (raw[0] + raw[1]), abs=1e-12)

    def test_output_parses_in_analysis_pipeline_strict_mode(self, emitted, tmp_path):
        _, text, *_ = emitted
        records_file = tmp_path / "records.jsonl"
        records_file.write_text(text, encoding="utf-8")
        proc = analysis_cli("analyze", str(records_file), "--strict", "--out", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        report_lines = (tmp_path / "report.csv").read_text().strip().split("\n")
        assert len(report_lines) == 157
        assert not any(line.endswith(",") is False and line.split(",")[-1] for line in report_lines[1:]), (
            "no record should carry an analysis error"
        )

    def test_geometry_identity_on_every_record(self, emitted, tiny_model, mini_corpus_text):
        instances, text, *_ = emitted
        inventory = extract_phrases([mini_corpus_text], vocabulary=tiny_model.vocabulary_words())
        lines = text.strip().split("\n")
        for instance, line in zip(instances[:20], lines[:20]):
            record = json.loads(line)
            sentences = render_sentences(instance, tiny_model.mask_token)
            for i, sentence in enumerate(sentences):
                prediction = tiny_model.predict(sentence, instance.nouns)
                eps_observed = 2.0 * record["p_first"][i] - 1.0
                dl = float(
                    prediction.prediction_vector
                    @ (prediction.candidate_embeddings[0] - prediction.candidate_embeddings[1])
                    + prediction.candidate_biases[0]
                    - prediction.candidate_biases[1]
                )
                assert abs(eps_observed - math.tanh(dl / 2.0)) <= 1e-4
