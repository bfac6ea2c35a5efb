#!/usr/bin/env python3
"""Train and save the models shipped under fixtures/models/.

Deterministic (fixed seeds); rerunning reproduces byte-identical files.
The shipped artifacts let extraction and evaluation run out of the box and
back the fast shipped-model tests.
"""

import sys
from pathlib import Path

from keyness.corpus import build_corpus_stats, load_dataset
from keyness.embeddings import LexicalEmbedder
from keyness.neural import TrainingConfig, save_model
from keyness.pulearn import train_identifier, train_ranker

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def main() -> int:
    out_dir = FIXTURES / "models"
    out_dir.mkdir(parents=True, exist_ok=True)
    news_tr = load_dataset(FIXTURES / "news" / "train.manifest.json")
    news_te = load_dataset(FIXTURES / "news" / "test.manifest.json")
    abs_tr = load_dataset(FIXTURES / "abstracts" / "train.manifest.json")
    abs_te = load_dataset(FIXTURES / "abstracts" / "test.manifest.json")
    stats = build_corpus_stats(news_tr.documents + news_te.documents
                               + abs_tr.documents + abs_te.documents)
    stats.save(out_dir / "stats.json")

    identifier, _ = train_identifier(
        [news_tr, abs_tr],
        TrainingConfig(epochs=20, batch_size=56, learning_rate=1.0,
                       epsilon=0.5, clip_norm=0.25, seed=3))
    save_model(identifier, out_dir / "identifier.knm")

    ranker, _ = train_ranker(
        [news_tr, abs_tr],
        TrainingConfig(epochs=45, batch_size=126, learning_rate=0.02,
                       theta=3.35, clip_norm=0.25, seed=3),
        identifier, stats, LexicalEmbedder())
    save_model(ranker, out_dir / "ranker.knm")
    for name in ("stats.json", "identifier.knm", "ranker.knm"):
        print(f"{name}: {(out_dir / name).stat().st_size} bytes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
