"""End-to-end extraction, evaluation metrics, sweeps and analysis exports."""

from __future__ import annotations

import csv
import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .candidates import TermGroup, cluster_terms, select_candidates
from .clustering import average_linkage_labels
from .corpus import CorpusStats, Dataset, Document, term_frequencies
from .errors import KeynessError
from .features import (FEATURE_ORDER, assemble_document_patterns)
from .neural import IdentifierModel, RankerModel, TrainingConfig
from .pulearn import ranker_instances, train_ranker

log = logging.getLogger(__name__)

DEFAULT_TOP_K = 10


class ExtractStageError(KeynessError):
    def __init__(self, stage, original):
        self.stage = stage
        self.original = original
        super().__init__(f"extraction stage {stage!r} failed: {original}")


@dataclass
class RankedGroups:
    """Term groups ordered by non-increasing group score (max member keyness).
    member_scores retains the per-term score each group was ranked by."""

    groups: list[TermGroup]
    scores: list[float]
    member_scores: dict = dataclasses.field(default_factory=dict)

    def keys_by_rank(self) -> list[list[str]]:
        return [g.keys() for g in self.groups]

    def to_record(self, doc_id: str) -> dict:
        return {
            "doc_id": doc_id,
            "groups": [
                {"score": score,
                 "members": [{"key": m.key, "r": self.member_scores[m.key]}
                             for m in group.members]}
                for group, score in zip(self.groups, self.scores)
            ],
        }


def extract(document: Document, identifier: IdentifierModel, ranker: RankerModel,
            stats: CorpusStats, embedder, top_k: int | None = DEFAULT_TOP_K,
            distance_threshold: float = 0.1, in_reference: bool = False,
            sublanguage: str | None = None) -> RankedGroups:
    """Full pipeline: ngrams -> identification -> clustering -> patterns ->
    ranking -> groups sorted by their best member's keyness."""
    if sublanguage is not None:
        document = dataclasses.replace(document, sublanguage=sublanguage)
    stage = "candidate-selection"
    try:
        candidates = select_candidates(identifier, document)
        if not candidates:
            return RankedGroups(groups=[], scores=[], member_scores={})
        stage = "term-clustering"
        groups = cluster_terms(candidates, embedder, distance_threshold)
        stage = "pattern-assembly"
        patterns = assemble_document_patterns(document, candidates, groups, stats,
                                              in_reference=in_reference)
        stage = "ranking"
        ordered_keys = [c.key for c in candidates]
        keyness = ranker.keyness_batch([patterns[k] for k in ordered_keys])
        by_key = dict(zip(ordered_keys, keyness.tolist()))
    except KeynessError as exc:
        raise ExtractStageError(stage, exc)
    return _rank_groups(groups, by_key, top_k)


def _rank_groups(groups: list[TermGroup], score_by_key: dict,
                 top_k: int | None) -> RankedGroups:
    scored = []
    for group in groups:
        best = max(group.members, key=lambda m: (score_by_key[m.key], m.key))
        group.representative = best
        scored.append((score_by_key[best.key], best.key, group))
    scored.sort(key=lambda item: (-item[0], item[1]))
    if top_k is not None:
        scored = scored[:top_k]
    kept_keys = {m.key for _s, _k, g in scored for m in g.members}
    return RankedGroups(groups=[g for _s, _k, g in scored],
                        scores=[s for s, _k, _g in scored],
                        member_scores={k: v for k, v in score_by_key.items()
                                       if k in kept_keys})


def tfidf_baseline(document: Document, identifier: IdentifierModel,
                   stats: CorpusStats, embedder, top_k: int | None = DEFAULT_TOP_K,
                   distance_threshold: float = 0.1) -> RankedGroups:
    """Same candidates and groups, ranked by TF-IDF alone (no learned model)."""
    from .corpus import ngram_frequency_profile
    from .features import tfidf_score
    candidates = select_candidates(identifier, document)
    if not candidates:
        return RankedGroups(groups=[], scores=[])
    groups = cluster_terms(candidates, embedder, distance_threshold)
    profile = ngram_frequency_profile(document)
    by_key = {c.key: tfidf_score(c, profile, stats) for c in candidates}
    return _rank_groups(groups, by_key, top_k)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def present_gold_keys(document: Document) -> list[str]:
    """Gold keys that actually occur in the document as ngrams (n <= 4)."""
    occurring = term_frequencies(document)
    return [k for k in document.gold_keys() if k in occurring]


def identification_recall(selected_keys, gold_keys_present) -> float | None:
    """Fraction of present gold keywords among the selected candidate keys.
    None when the document has no present gold keywords (caller skips it)."""
    gold = set(gold_keys_present)
    if not gold:
        return None
    return len(gold & set(selected_keys)) / len(gold)


def correct_group_flags(ranked: RankedGroups, gold_keys) -> list[bool]:
    """Greedy top-down matching: a group is correct if it contains an
    as-yet-uncredited gold keyword; each gold keyword credits one group."""
    remaining = set(gold_keys)
    flags = []
    for group in ranked.groups:
        hit = next((k for k in group.keys() if k in remaining), None)
        if hit is not None:
            remaining.discard(hit)
            flags.append(True)
        else:
            flags.append(False)
    return flags


def topk_scores(ranked: RankedGroups, gold_keys, k: int = DEFAULT_TOP_K
                ) -> tuple[float, float, float] | None:
    """Precision@k (literal divide-by-k), recall@k and their harmonic mean.
    None when the document has no gold keywords."""
    gold = list(dict.fromkeys(gold_keys))
    if not gold:
        return None
    top = RankedGroups(groups=ranked.groups[:k], scores=ranked.scores[:k])
    correct = sum(correct_group_flags(top, gold))
    precision = correct / k
    recall = correct / len(gold)
    f_score = (2 * precision * recall / (precision + recall)
               if precision + recall > 0 else 0.0)
    return precision, recall, f_score


def first_correct_rank(ranked: RankedGroups, gold_keys) -> int | None:
    for rank, flag in enumerate(correct_group_flags(ranked, gold_keys), start=1):
        if flag:
            return rank
    return None


def mrr(ranked_lists: list[RankedGroups], golds: list[list[str]]) -> float:
    """Mean over documents of the reciprocal rank of the first correct group
    (0 when a document has none).  Documents without gold keywords are
    skipped; an empty corpus is an error."""
    values = []
    for ranked, gold in zip(ranked_lists, golds):
        if not gold:
            continue
        rank = first_correct_rank(ranked, gold)
        values.append(1.0 / rank if rank else 0.0)
    if not values:
        raise KeynessError("mrr: no documents with gold keywords")
    return float(np.mean(values))


def mrr_literal(ranked_lists: list[RankedGroups], golds: list[list[str]]) -> float:
    """The literal summation variant: per document, sum of reciprocal ranks of
    all correct groups divided by the number of predictions."""
    values = []
    for ranked, gold in zip(ranked_lists, golds):
        if not gold:
            continue
        if not ranked.groups:
            values.append(0.0)
            continue
        flags = correct_group_flags(ranked, gold)
        total = sum(1.0 / rank for rank, flag in enumerate(flags, start=1) if flag)
        values.append(total / len(ranked.groups))
    if not values:
        raise KeynessError("mrr: no documents with gold keywords")
    return float(np.mean(values))


def spearman_rho(xs, ys) -> float:
    """Spearman rank correlation with average ranks for ties."""
    def ranks(values):
        values = np.asarray(values, dtype=np.float64)
        order = np.argsort(values, kind="stable")
        out = np.empty(len(values))
        i = 0
        while i < len(values):
            j = i
            while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
                j += 1
            out[order[i:j + 1]] = (i + j) / 2.0 + 1.0
            i = j + 1
        return out

    rx, ry = ranks(xs), ranks(ys)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx ** 2).sum() * (ry ** 2).sum())
    if denom == 0:
        return 0.0
    return float((rx * ry).sum() / denom)


# ---------------------------------------------------------------------------
# Dataset-level evaluation
# ---------------------------------------------------------------------------

def map_ordered(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def evaluate_dataset(dataset: Dataset, identifier: IdentifierModel,
                     ranker: RankerModel, stats: CorpusStats, embedder,
                     k: int = DEFAULT_TOP_K, distance_threshold: float = 0.1,
                     in_reference: bool = True, sublanguage: str | None = None,
                     jobs: int = 1) -> dict:
    """Per-dataset precision/recall/F at k, MRR and identification recall,
    macro-averaged over documents that have present gold keywords."""

    def run(doc: Document):
        gold = present_gold_keys(doc)
        selected = select_candidates(identifier, doc)
        ranked = extract(doc, identifier, ranker, stats, embedder, top_k=None,
                         distance_threshold=distance_threshold,
                         in_reference=in_reference, sublanguage=sublanguage)
        return gold, [c.key for c in selected], ranked

    results = map_ordered(run, dataset.documents, jobs)
    precisions, recalls, fscores, ident_recalls = [], [], [], []
    ranked_lists, golds = [], []
    skipped = 0
    for (gold, selected_keys, ranked), doc in zip(results, dataset.documents):
        if not gold:
            skipped += 1
            log.info("document %s has no present gold keywords; skipped", doc.id)
            continue
        prf = topk_scores(ranked, gold, k=k)
        precisions.append(prf[0])
        recalls.append(prf[1])
        fscores.append(prf[2])
        ident_recalls.append(identification_recall(selected_keys, gold))
        ranked_lists.append(ranked)
        golds.append(gold)
    if not golds:
        raise KeynessError(f"dataset {dataset.name}: no document has present gold keywords")
    return {
        "dataset": dataset.name,
        "documents": len(dataset.documents),
        "skipped_no_gold": skipped,
        "precision_at_k": float(np.mean(precisions)),
        "recall_at_k": float(np.mean(recalls)),
        "f_at_k": float(np.mean(fscores)),
        "mrr": mrr(ranked_lists, golds),
        "mrr_literal": mrr_literal(ranked_lists, golds),
        "identification_recall": float(np.mean(ident_recalls)),
        "k": k,
    }


def evaluation_report(datasets: list[Dataset], identifier, ranker, stats, embedder,
                      k: int = DEFAULT_TOP_K, distance_threshold: float = 0.1,
                      in_reference: bool = True, sublanguage: str | None = None,
                      jobs: int = 1, config_echo: dict | None = None) -> dict:
    per_dataset = {}
    for ds in datasets:
        per_dataset[ds.name] = evaluate_dataset(
            ds, identifier, ranker, stats, embedder, k=k,
            distance_threshold=distance_threshold, in_reference=in_reference,
            sublanguage=sublanguage, jobs=jobs)
    macro = {}
    for metric in ("precision_at_k", "recall_at_k", "f_at_k", "mrr",
                   "identification_recall"):
        macro[metric] = float(np.mean([d[metric] for d in per_dataset.values()]))
    return {"datasets": per_dataset, "macro": macro, "config": config_echo or {}}


# ---------------------------------------------------------------------------
# Theta sweep
# ---------------------------------------------------------------------------

def sweep_theta(train_datasets: list[Dataset], eval_datasets: list[Dataset],
                theta_grid: list[float], config: TrainingConfig,
                identifier: IdentifierModel, stats: CorpusStats, embedder,
                distance_threshold: float = 0.1, k: int = DEFAULT_TOP_K,
                jobs: int = 1) -> list[dict]:
    """Train one ranker per theta (fresh derived seed each) and evaluate it.
    A failed point is recorded with its error; the sweep continues."""
    if not theta_grid:
        raise ValueError("theta grid must be non-empty")
    instances = {ds.name: ranker_instances(ds, identifier, stats, embedder,
                                           distance_threshold)
                 for ds in train_datasets}
    points = []
    for index, theta in enumerate(theta_grid):
        try:
            # fresh bootstrap-sampling stream per point, derived from the base
            # seed; model initialization stays shared so points are comparable
            point_config = dataclasses.replace(
                config, theta=theta, sampling_seed=int(np.random.default_rng(
                    [config.seed, index]).integers(0, 2 ** 31)))
            ranker, _log = train_ranker(train_datasets, point_config, identifier,
                                        stats, embedder, distance_threshold,
                                        instances_by_dataset=instances)
            report = evaluation_report(eval_datasets, identifier, ranker, stats,
                                       embedder, k=k,
                                       distance_threshold=distance_threshold,
                                       jobs=jobs)
            points.append({"theta": theta,
                           "precision": report["macro"]["precision_at_k"],
                           "recall": report["macro"]["recall_at_k"],
                           "f_score": report["macro"]["f_at_k"],
                           "mrr": report["macro"]["mrr"]})
        except Exception as exc:  # record and continue
            log.error("sweep point theta=%s failed: %s", theta, exc)
            points.append({"theta": theta, "error": str(exc)})
    return points


def write_sweep_csv(points: list[dict], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "precision", "recall", "f_score", "mrr"])
        for pt in points:
            if "error" in pt:
                writer.writerow([pt["theta"], "", "", "", ""])
            else:
                writer.writerow([pt["theta"], pt["precision"], pt["recall"],
                                 pt["f_score"], pt["mrr"]])


# ---------------------------------------------------------------------------
# Pattern coverage and feature exports
# ---------------------------------------------------------------------------

def keyword_pattern_vectors(datasets: list[Dataset], identifier: IdentifierModel,
                            stats: CorpusStats, embedder,
                            distance_threshold: float = 0.1) -> list[np.ndarray]:
    """Dependent-feature vectors of gold-matching candidates, in corpus order."""
    vectors = []
    for ds in datasets:
        for inst in ranker_instances(ds, identifier, stats, embedder,
                                     distance_threshold):
            if inst.positive:
                vectors.append(inst.pattern.dependent)
    return vectors


def pattern_coverage(pattern_vectors: list[np.ndarray],
                     distance_threshold: float = 0.1
                     ) -> tuple[list[tuple[int, float]], int]:
    """Cluster the pattern vectors and walk them in corpus order, recording
    (instances consumed, cumulative fraction of clusters touched).  Returns
    the curve and the cluster count.  The curve is monotone nondecreasing and
    ends at 1.0; fewer than two patterns degenerate to a single point."""
    if not pattern_vectors:
        return [], 0
    if len(pattern_vectors) == 1:
        return [(1, 1.0)], 1
    labels = average_linkage_labels(np.vstack(pattern_vectors), distance_threshold)
    total = len(set(labels))
    seen: set[int] = set()
    curve = []
    for i, lab in enumerate(labels):
        seen.add(lab)
        curve.append((i + 1, len(seen) / total))
    return curve, total


def pattern_coverage_curve(pattern_vectors: list[np.ndarray],
                           distance_threshold: float = 0.1) -> list[tuple[int, float]]:
    return pattern_coverage(pattern_vectors, distance_threshold)[0]


def write_coverage_csv(curve: list[tuple[int, float]], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance", "coverage"])
        writer.writerows(curve)


def export_feature_distributions(datasets: list[Dataset], identifier, stats,
                                 embedder, path, distance_threshold: float = 0.1) -> int:
    """Long-format CSV {dataset, feature, is_keyword, value}: one row per
    dependent feature per selected candidate.  Returns the row count."""
    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "feature", "is_keyword", "value"])
        for ds in datasets:
            for inst in ranker_instances(ds, identifier, stats, embedder,
                                         distance_threshold):
                for name, value in zip(FEATURE_ORDER, inst.pattern.dependent):
                    writer.writerow([ds.name, name, int(inst.positive), float(value)])
                    rows += 1
    return rows
