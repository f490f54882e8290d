"""Adjective-noun phrase inventory and schema-instance fan-out."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .tagging import tag_text


@dataclass
class PhraseInventory:
    """Counts of adjacent (adjective, noun) pairs and of the words inside them.

    Word counts are the marginals of the phrase counts, so the two views
    stay consistent by construction.
    """

    phrase_counts: Counter = field(default_factory=Counter)

    @property
    def noun_counts(self) -> Counter:
        nouns = Counter()
        for (_, noun), count in self.phrase_counts.items():
            nouns[noun] += count
        return nouns

    @property
    def adjective_counts(self) -> Counter:
        adjectives = Counter()
        for (adjective, _), count in self.phrase_counts.items():
            adjectives[adjective] += count
        return adjectives

    def adjectives_of(self, noun: str) -> dict[str, int]:
        return {a: c for (a, n), c in self.phrase_counts.items() if n == noun}


def _keep_word(word: str) -> bool:
    return len(word) > 1 and word.isalpha()


def extract_phrases(documents, vocabulary=None) -> PhraseInventory:
    """Collect adjacent JJ-NN token pairs from plain-text documents.

    One-letter words and numbers are dropped; when `vocabulary` is given,
    only nouns contained in it (single-token model words) are kept.  All
    words are lower-cased.
    """
    inventory = PhraseInventory()
    for text in documents:
        for sentence in tag_text(text):
            for (w1, t1), (w2, t2) in zip(sentence, sentence[1:]):
                if t1 != "JJ" or t2 != "NN":
                    continue
                adjective = w1.lower()
                noun = w2.lower()
                if not (_keep_word(adjective) and _keep_word(noun)):
                    continue
                if vocabulary is not None and noun not in vocabulary:
                    continue
                inventory.phrase_counts[(adjective, noun)] += 1
    return inventory


@dataclass(frozen=True)
class Instance:
    """One schema instance: a noun pair plus an ordered adjective triple."""

    nouns: tuple[str, str]
    adjectives: tuple[str, str, str]


def shared_adjectives(inventory: PhraseInventory, noun_a: str, noun_b: str) -> dict[str, tuple[int, int]]:
    of_a = inventory.adjectives_of(noun_a)
    of_b = inventory.adjectives_of(noun_b)
    return {a: (of_a[a], of_b[a]) for a in of_a.keys() & of_b.keys()}


def build_instances(inventory: PhraseInventory, top_adjectives: int = 5, min_shared: int = 3) -> list[Instance]:
    """All ordered adjective triples over the strongest shared adjectives.

    Noun pairs are unordered (kept in lexicographic order); pairs sharing
    fewer than `min_shared` adjectives are skipped.  Of the shared
    adjectives the `top_adjectives` best survive, ranked by the smaller of
    the two phrase counts, then by their sum, then lexicographically; a
    full complement of 5 yields 5*4*3 = 60 ordered triples.
    """
    nouns = sorted(inventory.noun_counts)
    instances = []
    for noun_a, noun_b in itertools.combinations(nouns, 2):
        shared = shared_adjectives(inventory, noun_a, noun_b)
        if len(shared) < min_shared:
            continue
        ranked = sorted(
            shared.items(),
            key=lambda item: (-min(item[1]), -(item[1][0] + item[1][1]), item[0]),
        )
        chosen = [adjective for adjective, _ in ranked[:top_adjectives]]
        for triple in itertools.permutations(chosen, 3):
            instances.append(Instance((noun_a, noun_b), triple))
    return instances
