"""Tokenisation, sentence splitting and Penn-Treebank POS tagging.

The tagger is a self-contained lexicon-plus-suffix tagger: closed-class
words and a list of frequent adjectives are looked up directly, everything
else falls through morphological rules to a noun default.  It covers the
tags this pipeline consumes (JJ vs NN/NNS/NNP discrimination); swapping in
a statistical tagger only requires matching the `tag_sentence` signature.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:\.\d+)?|[^\sA-Za-z\d]")
_SENTENCE_END = {".", "!", "?"}

# Closed classes first; these never fall through to the suffix rules.
_CLOSED = {
    "the": "DT", "a": "DT", "an": "DT", "this": "DT", "that": "DT",
    "these": "DT", "those": "DT", "every": "DT", "each": "DT", "some": "DT",
    "any": "DT", "no": "DT", "both": "DT",
    "and": "CC", "or": "CC", "but": "CC", "nor": "CC", "yet": "CC",
    "of": "IN", "in": "IN", "on": "IN", "at": "IN", "by": "IN", "with": "IN",
    "from": "IN", "for": "IN", "as": "IN", "into": "IN", "over": "IN",
    "under": "IN", "near": "IN", "after": "IN", "before": "IN", "during": "IN",
    "about": "IN", "through": "IN", "against": "IN", "between": "IN",
    "because": "IN", "while": "IN", "if": "IN", "than": "IN", "off": "IN",
    "past": "IN", "below": "IN", "above": "IN", "behind": "IN", "beside": "IN",
    "to": "TO",
    "i": "PRP", "you": "PRP", "he": "PRP", "she": "PRP", "it": "PRP",
    "we": "PRP", "they": "PRP", "him": "PRP", "her": "PRP", "them": "PRP",
    "me": "PRP", "us": "PRP",
    "my": "PRP$", "your": "PRP$", "his": "PRP$", "its": "PRP$", "our": "PRP$",
    "their": "PRP$",
    "who": "WP", "what": "WP", "which": "WDT", "where": "WRB", "when": "WRB",
    "why": "WRB", "how": "WRB",
    "not": "RB", "never": "RB", "always": "RB", "often": "RB", "very": "RB",
    "too": "RB", "quite": "RB", "also": "RB", "here": "RB", "there": "EX",
    "now": "RB", "then": "RB", "again": "RB", "soon": "RB", "still": "RB",
    "is": "VBZ", "are": "VBP", "was": "VBD", "were": "VBD", "be": "VB",
    "been": "VBN", "being": "VBG", "am": "VBP",
    "has": "VBZ", "have": "VBP", "had": "VBD", "having": "VBG",
    "does": "VBZ", "do": "VBP", "did": "VBD", "doing": "VBG", "done": "VBN",
    "can": "MD", "could": "MD", "will": "MD", "would": "MD", "shall": "MD",
    "should": "MD", "may": "MD", "might": "MD", "must": "MD",
    # frequent irregular past forms
    "ate": "VBD", "fell": "VBD", "lay": "VBD", "sat": "VBD", "stood": "VBD",
    "ran": "VBD", "saw": "VBD", "grew": "VBD", "came": "VBD", "went": "VBD",
    "got": "VBD", "took": "VBD", "made": "VBD", "found": "VBD", "kept": "VBD",
    "held": "VBD", "gave": "VBD", "drew": "VBD", "wrote": "VBD", "read": "VBD",
    "bought": "VBD", "slept": "VBD", "felt": "VBD", "froze": "VBD",
    "built": "VBD", "left": "VBD", "told": "VBD", "heard": "VBD",
    "one": "CD", "two": "CD", "three": "CD", "four": "CD", "five": "CD",
    "six": "CD", "seven": "CD", "eight": "CD", "nine": "CD", "ten": "CD",
}

# Frequent adjectives that carry no reliable adjectival suffix.
_ADJECTIVES = {
    "red", "green", "blue", "yellow", "white", "black", "brown", "grey",
    "gray", "pink", "purple", "orange",
    "big", "small", "large", "little", "long", "short", "tall", "wide",
    "narrow", "thick", "thin", "deep", "shallow", "high", "low",
    "old", "young", "new", "ancient", "modern", "early", "late", "recent",
    "good", "bad", "great", "fine", "poor", "rich", "cheap", "main",
    "hot", "cold", "warm", "cool", "dry", "wet", "damp",
    "sweet", "sour", "bitter", "fresh", "ripe", "raw", "soft", "hard",
    "smooth", "rough", "round", "flat", "sharp", "blunt", "clean", "dirty",
    "quiet", "loud", "bright", "dark", "pale", "clear", "heavy", "light",
    "fast", "slow", "quick", "strong", "weak", "full", "empty", "open",
    "closed", "free", "busy", "safe", "common", "rare", "real", "true",
    "false", "wild", "calm", "wooden", "golden", "silver", "stone",
    "happy", "sad", "angry", "proud", "eager", "gentle", "polite", "rude",
    "simple", "complex", "easy", "difficult", "important", "certain",
    "single", "double", "whole", "half", "several", "local", "foreign",
    "distant", "nearby", "giant", "tiny", "huge", "broad", "severe",
}

_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ish", "less", "ary", "ic", "al")
_NUMBER_RE = re.compile(r"^\d+(\.\d+)?$")


def word_tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def sentence_split(tokens: list[str]) -> list[list[str]]:
    """Group a token stream into sentences on terminal punctuation."""
    sentences = []
    current = []
    for token in tokens:
        current.append(token)
        if token in _SENTENCE_END:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def _tag_word(token: str, sentence_initial: bool) -> str:
    lower = token.lower()
    if _NUMBER_RE.match(token):
        return "CD"
    if not token[0].isalpha():
        return token if token in {",", ".", ":", "(", ")"} else "SYM"
    if lower in _CLOSED:
        return _CLOSED[lower]
    if token[0].isupper() and not sentence_initial:
        return "NNP"
    if lower in _ADJECTIVES:
        return "JJ"
    if lower.endswith("ly"):
        return "RB"
    if lower.endswith("ing") and len(lower) > 4:
        return "VBG"
    if lower.endswith("ed") and len(lower) > 3:
        return "VBD"
    if any(lower.endswith(s) for s in _ADJ_SUFFIXES) and len(lower) > 4:
        return "JJ"
    if lower.endswith("s") and not lower.endswith("ss") and len(lower) > 3:
        return "NNS"
    return "NN"


def tag_sentence(tokens: list[str]) -> list[tuple[str, str]]:
    """Penn-Treebank (token, tag) pairs for one sentence."""
    return [(token, _tag_word(token, i == 0)) for i, token in enumerate(tokens)]


def tag_text(text: str) -> list[list[tuple[str, str]]]:
    """Tokenise, split into sentences and tag each one."""
    return [tag_sentence(s) for s in sentence_split(word_tokenize(text))]
