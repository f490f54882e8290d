"""The two-noun / three-modifier anaphora schema.

Three sentences share a lead naming both nouns; each follows with a masked
anaphor modified by a cyclically adjacent pair of modifiers.  The first two
sentences assert co-reference ("the same one"), the third anti-reference
("the other one"), so reading the masked-referent distributions as context
tables yields a rank-3 model on a PR-box support with the last context
anti-correlated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegeneratePredictionError, ModelValidationError
from .prlike import PrLikeModel, from_probabilities

MODIFIER_KINDS = ("adjective", "verb", "preposition")

DEFAULT_MASK = "[MASK]"


@dataclass(frozen=True)
class SchemaInstance:
    """A noun pair plus an ordered modifier triple."""

    nouns: tuple[str, str]
    modifiers: tuple[str, str, str]
    modifier_kind: str = "adjective"

    def __post_init__(self):
        if len(self.nouns) != 2 or len(set(self.nouns)) != 2:
            raise ModelValidationError("nouns must be two distinct strings")
        if len(self.modifiers) != 3 or len(set(self.modifiers)) != 3:
            raise ModelValidationError("modifiers must be three pairwise distinct strings")
        if not all(self.nouns) or not all(self.modifiers):
            raise ModelValidationError("nouns and modifiers must be nonempty")
        if self.modifier_kind not in MODIFIER_KINDS:
            raise ModelValidationError(
                f"modifier_kind must be one of {MODIFIER_KINDS}, got {self.modifier_kind!r}"
            )


def indefinite_article(noun: str) -> str:
    """"an" before a vowel-initial word, "a" otherwise."""
    return "an" if noun[:1].lower() in "aeiou" else "a"


def _predicate(modifier: str, kind: str) -> str:
    if kind == "verb":
        return f"is being {modifier}"
    return f"is {modifier}"


def render_sentences(inst: SchemaInstance, mask_token: str = DEFAULT_MASK) -> tuple[str, str, str]:
    """The three masked sentences, contexts (m1,m2), (m2,m3), (m3,m1)."""
    if not mask_token:
        raise ModelValidationError("mask token must be nonempty")
    first, second = inst.nouns
    lead = (
        f"There is {indefinite_article(first)} {first} "
        f"and {indefinite_article(second)} {second}."
    )
    m1, m2, m3 = inst.modifiers
    kind = inst.modifier_kind
    return (
        f"{lead} The {mask_token} {_predicate(m1, kind)} and the same one {_predicate(m2, kind)}.",
        f"{lead} The {mask_token} {_predicate(m2, kind)} and the same one {_predicate(m3, kind)}.",
        f"{lead} The {mask_token} {_predicate(m3, kind)} and the other one {_predicate(m1, kind)}.",
    )


def normalize_pair(p_a: float, p_b: float) -> tuple[float, float]:
    """Renormalise two nonnegative scores so they sum to 1."""
    if p_a < 0.0 or p_b < 0.0:
        raise ModelValidationError(f"probabilities must be nonnegative, got ({p_a}, {p_b})")
    total = p_a + p_b
    if total == 0.0:
        raise DegeneratePredictionError("both candidates received zero probability")
    return p_a / total, p_b / total


def build_model(inst: SchemaInstance, normalized_p_first) -> PrLikeModel:
    """Rank-3 model from the normalised first-noun probability per context.

    Contexts 1-2 put p on both anaphors naming the first noun; context 3
    puts p on (first, second), i.e. only the last context is
    anti-correlated.
    """
    p = tuple(normalized_p_first)
    if len(p) != 3:
        raise ModelValidationError(f"expected 3 probabilities, got {len(p)}")
    return from_probabilities(p, anticorrelated=frozenset({3}))
