from pathlib import Path

import pytest

from anaphora_extractor.mlm import MaskedLanguageModel

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def tiny_model():
    return MaskedLanguageModel(str(FIXTURES / "tiny_model"))


@pytest.fixture(scope="session")
def mini_corpus_text():
    return (FIXTURES / "mini_corpus.txt").read_text(encoding="utf-8")
