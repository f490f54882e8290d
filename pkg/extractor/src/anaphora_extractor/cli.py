"""Extraction CLI: corpus in, wire-format probability records out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .emit import emit_records
from .mlm import DEFAULT_MODEL, MaskedLanguageModel
from .phrases import build_instances, extract_phrases


def _documents(corpus: Path):
    if corpus.is_dir():
        for path in sorted(corpus.rglob("*.txt")):
            yield path.read_text(encoding="utf-8")
    else:
        yield corpus.read_text(encoding="utf-8")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="anaphora-extract",
        description="Extract adjective-noun pairs from a corpus, query a masked "
        "language model on the anaphora schema, and emit probability records.",
    )
    parser.add_argument("corpus", help="plain-text file or a directory of .txt documents")
    parser.add_argument("--model", default=DEFAULT_MODEL, help="masked-LM checkpoint name or path")
    parser.add_argument("--top-adjectives", type=int, default=5, help="shared adjectives kept per noun pair")
    parser.add_argument("--min-shared", type=int, default=3, help="minimum shared adjectives per noun pair")
    parser.add_argument("--out", default="-", help="output records file (default stdout)")
    parser.add_argument("--limit", type=int, default=None, help="cap the number of instances")
    args = parser.parse_args(argv)

    corpus = Path(args.corpus)
    if not corpus.exists():
        print(f"error: corpus {corpus} does not exist", file=sys.stderr)
        return 1

    model = MaskedLanguageModel(args.model)
    inventory = extract_phrases(_documents(corpus), vocabulary=model.vocabulary_words())
    instances = build_instances(inventory, args.top_adjectives, args.min_shared)
    if args.limit is not None:
        instances = instances[: args.limit]
    print(
        f"{len(inventory.phrase_counts)} distinct phrases, "
        f"{len(inventory.noun_counts)} nouns, {len(inventory.adjective_counts)} adjectives, "
        f"{len(instances)} instances",
        file=sys.stderr,
    )

    if args.out == "-":
        written, failed = emit_records(instances, model, inventory, sys.stdout, sys.stderr)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            written, failed = emit_records(instances, model, inventory, fh, sys.stderr)
    print(f"wrote {written} records ({failed} failed)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
