"""Corpus and masked-LM adapter for the anaphora-schema analysis pipeline."""

from .emit import build_record, emit_records, render_sentences
from .mlm import DEFAULT_MODEL, ExtractionError, MaskedLanguageModel, TokenPrediction
from .phrases import Instance, PhraseInventory, build_instances, extract_phrases, shared_adjectives
from .tagging import sentence_split, tag_sentence, tag_text, word_tokenize

__version__ = "0.1.0"
