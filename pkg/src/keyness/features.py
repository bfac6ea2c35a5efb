"""Dependent feature scores and keyness-pattern assembly.

Each candidate term gets a 19-slot keyness pattern: two independent features
(the document's sublanguage and the term's length, which modulate everything
else) plus seventeen dependent scores in a fixed, versioned order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .candidates import CandidateTerm, TermGroup
from .corpus import CorpusStats, Document, NGramProfile, ngram_frequency_profile
from .errors import FeatureError
from .graphs import (Graph, betweenness_centrality, build_term_graph,
                     build_topic_graph, closeness_centrality,
                     eigenvector_centrality, pagerank)

FEATURE_ORDER = (
    "casing",
    "position",
    "frequency",
    "context_diversity",
    "tfidf",
    "effect_size",
    "lexical_specificity",
    "dispersion",
    "position_rank",
    "tfidf_rank",
    "lexical_rank",
    "single_rank",
    "topic_rank",
    "eigenvector",
    "closeness",
    "betweenness",
    "wellformedness",
)
FEATURE_ORDER_VERSION = 1
N_DEPENDENT = len(FEATURE_ORDER)

SEED_KINDS = ("position", "tfidf", "lexical", "uniform")


@dataclass
class KeynessPattern:
    sublanguage: str
    length: int
    dependent: np.ndarray  # 17 values, FEATURE_ORDER

    def __post_init__(self):
        self.dependent = np.asarray(self.dependent, dtype=np.float64)
        if self.dependent.shape != (N_DEPENDENT,):
            raise ValueError(f"dependent vector must have {N_DEPENDENT} entries, "
                             f"got shape {self.dependent.shape}")
        bad = ~np.isfinite(self.dependent)
        if bad.any():
            name = FEATURE_ORDER[int(np.argmax(bad))]
            raise FeatureError(name, "non-finite value")


# ---------------------------------------------------------------------------
# Scalar scores
# ---------------------------------------------------------------------------

def casing_score(term: CandidateTerm, document: Document) -> float:
    """Mean over occurrences of the fraction of upper-cased words."""
    total = 0.0
    for s_idx, t_idx in term.occurrences:
        window = document.sentences[s_idx][t_idx:t_idx + term.length]
        total += sum(1 for t in window if t.case_status == "UPPER-CASE") / term.length
    return total / len(term.occurrences)


def position_score(term: CandidateTerm, document: Document) -> float:
    """-ln(first-occurrence sentence index / sentence count), 1-based index."""
    first = min(s for s, _t in term.occurrences) + 1
    return -math.log(first / document.sentence_count)


def frequency_score(term: CandidateTerm, profile: NGramProfile) -> float:
    """Occurrence count scaled by mean + population std of the term's ngram
    length category."""
    mean, std = profile.category(term.length)
    denom = mean + std
    if denom <= 0.0:
        raise FeatureError("frequency", f"no ngrams of length {term.length} in profile")
    return len(term.occurrences) / denom


def context_diversity_score(term: CandidateTerm, document: Document) -> float:
    """Average of distinct/total ratios of the immediate left and right
    neighbor tokens across all occurrences; a side with no neighbors
    contributes 0."""
    left, right = [], []
    for s_idx, t_idx in term.occurrences:
        sentence = document.sentences[s_idx]
        if t_idx > 0:
            left.append(sentence[t_idx - 1].key)
        end = t_idx + term.length
        if end < len(sentence):
            right.append(sentence[end].key)
    left_ratio = len(set(left)) / len(left) if left else 0.0
    right_ratio = len(set(right)) / len(right) if right else 0.0
    return (left_ratio + right_ratio) / 2.0


def tfidf_score(term: CandidateTerm, profile: NGramProfile, stats: CorpusStats) -> float:
    """Length-normalized frequency times ln(document count / document
    frequency); unseen terms are smoothed to document frequency 1."""
    df = max(stats.doc_frequency.get(term.key, 0), 1)
    return frequency_score(term, profile) * math.log(stats.document_count / df)


def _reference_counts(term: CandidateTerm, document: Document, stats: CorpusStats,
                      in_reference: bool) -> tuple[int, int, int, int]:
    """(f_doc, n_doc, f_ref, n_ref) with out-of-reference smoothing applied:
    a document outside the reference corpus adds its own counts to the
    reference so the hypergeometric parameters stay valid."""
    f_doc = len(term.occurrences)
    n_doc = document.word_count
    f_ref = stats.ref_frequency.get(term.key, 0)
    n_ref = stats.ref_size
    if in_reference:
        if f_ref < f_doc or n_ref < n_doc:
            raise FeatureError(
                "lexical_specificity",
                f"reference counts inconsistent with document (term {term.key!r}: "
                f"f_ref={f_ref} < f_doc={f_doc} or ref_size={n_ref} < doc size={n_doc}); "
                "was the document part of the corpus the stats were built from?")
    else:
        f_ref += f_doc
        n_ref += n_doc
    return f_doc, n_doc, f_ref, n_ref


def effect_size_score(term: CandidateTerm, document: Document, stats: CorpusStats,
                      in_reference: bool = False) -> float:
    """Pointwise KL term: p_doc * (ln p_doc - ln p_ref)."""
    p_doc = len(term.occurrences) / document.word_count
    if term.key in stats.ref_frequency:
        _fd, _nd, f_ref, n_ref = _reference_counts(term, document, stats, in_reference)
        p_ref = f_ref / n_ref
    else:
        p_ref = 1.0 / (stats.ref_size + 1)
    return p_doc * (math.log(p_doc) - math.log(p_ref))


def _log_choose(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def log_hypergeom_upper_tail(f_doc: int, n_ref: int, f_ref: int, n_doc: int) -> float:
    """ln P(X >= f_doc) for X ~ Hypergeometric(total n_ref, successes f_ref,
    draws n_doc), computed in log space."""
    if f_ref < f_doc or n_ref < n_doc or f_doc < 0:
        raise ValueError(f"invalid hypergeometric parameters: "
                         f"f_doc={f_doc}, n_ref={n_ref}, f_ref={f_ref}, n_doc={n_doc}")
    k_min = max(0, n_doc + f_ref - n_ref)
    k_max = min(n_doc, f_ref)
    if f_doc <= k_min:
        return 0.0  # tail is the whole support
    log_norm = _log_choose(n_ref, n_doc)
    log_terms = [
        _log_choose(f_ref, k) + _log_choose(n_ref - f_ref, n_doc - k) - log_norm
        for k in range(f_doc, k_max + 1)
    ]
    peak = max(log_terms)
    total = peak + math.log(sum(math.exp(t - peak) for t in log_terms))
    return min(total, 0.0)


def lexical_specificity_score(term: CandidateTerm, document: Document,
                              stats: CorpusStats, in_reference: bool = False) -> float:
    """-log10 of the upper-tail hypergeometric probability of seeing the
    term's document frequency, given its reference-corpus rate."""
    f_doc, n_doc, f_ref, n_ref = _reference_counts(term, document, stats, in_reference)
    try:
        log_p = log_hypergeom_upper_tail(f_doc, n_ref, f_ref, n_doc)
    except ValueError as exc:
        raise FeatureError("lexical_specificity", str(exc))
    return max(-log_p / math.log(10), 0.0)


def dispersion_score(term: CandidateTerm, document: Document) -> float:
    """Fraction of the document's sentences the term occurs in."""
    return len(set(s for s, _t in term.occurrences)) / document.sentence_count


# ---------------------------------------------------------------------------
# Graph-derived scores
# ---------------------------------------------------------------------------

def personalized_ranks(graph: Graph, seed_kind: str,
                       seed_values: dict | None = None) -> dict:
    """PageRank over the term graph, personalized by the given per-vertex seed
    values ("uniform" ignores them).  Returns vertex -> score."""
    if seed_kind not in SEED_KINDS:
        raise ValueError(f"seed_kind must be one of {SEED_KINDS}, got {seed_kind!r}")
    seed = None
    if seed_kind != "uniform":
        if seed_values is None:
            raise ValueError(f"seed_kind {seed_kind!r} requires seed_values")
        seed = np.array([seed_values.get(v, 0.0) for v in graph.vertices])
    scores = pagerank(graph, personalization=seed)
    return dict(zip(graph.vertices, scores.tolist()))


@dataclass
class TopicScores:
    topic_rank: np.ndarray
    eigenvector: np.ndarray
    closeness: np.ndarray
    betweenness: np.ndarray


def topic_scores(topic_graph: Graph) -> TopicScores:
    """Unpersonalized PageRank plus the three topic-graph centralities;
    every member term of a group inherits its group's scores."""
    return TopicScores(
        topic_rank=pagerank(topic_graph),
        eigenvector=eigenvector_centrality(topic_graph),
        closeness=closeness_centrality(topic_graph),
        betweenness=betweenness_centrality(topic_graph),
    )


@dataclass
class GraphScores:
    """All graph-derived scores for one document, keyed for pattern assembly."""

    position_rank: dict
    tfidf_rank: dict
    lexical_rank: dict
    single_rank: dict
    group_of: dict  # term key -> group index
    topics: TopicScores


# ---------------------------------------------------------------------------
# Pattern assembly
# ---------------------------------------------------------------------------

_SCALAR_FEATURES = (
    ("casing", lambda term, ctx: casing_score(term, ctx["document"])),
    ("position", lambda term, ctx: position_score(term, ctx["document"])),
    ("frequency", lambda term, ctx: frequency_score(term, ctx["profile"])),
    ("context_diversity", lambda term, ctx: context_diversity_score(term, ctx["document"])),
    ("tfidf", lambda term, ctx: tfidf_score(term, ctx["profile"], ctx["stats"])),
    ("effect_size", lambda term, ctx: effect_size_score(
        term, ctx["document"], ctx["stats"], ctx["in_reference"])),
    ("lexical_specificity", lambda term, ctx: lexical_specificity_score(
        term, ctx["document"], ctx["stats"], ctx["in_reference"])),
    ("dispersion", lambda term, ctx: dispersion_score(term, ctx["document"])),
)


def assemble_pattern(term: CandidateTerm, document: Document, stats: CorpusStats,
                     profile: NGramProfile, graph_scores: GraphScores,
                     in_reference: bool = False) -> KeynessPattern:
    """Build the full keyness pattern for one candidate term.

    Any component failure is re-raised as a FeatureError naming the feature.
    """
    ctx = {"document": document, "profile": profile, "stats": stats,
           "in_reference": in_reference}
    values = []
    for name, fn in _SCALAR_FEATURES:
        try:
            values.append(fn(term, ctx))
        except FeatureError:
            raise
        except Exception as exc:
            raise FeatureError(name, str(exc))
    for name, ranks in (("position_rank", graph_scores.position_rank),
                        ("tfidf_rank", graph_scores.tfidf_rank),
                        ("lexical_rank", graph_scores.lexical_rank),
                        ("single_rank", graph_scores.single_rank)):
        if term.key not in ranks:
            raise FeatureError(name, f"term {term.key!r} missing from term graph")
        values.append(ranks[term.key])
    group_idx = graph_scores.group_of.get(term.key)
    if group_idx is None:
        raise FeatureError("topic_rank", f"term {term.key!r} not assigned to a group")
    topics = graph_scores.topics
    values.extend([
        float(topics.topic_rank[group_idx]),
        float(topics.eigenvector[group_idx]),
        float(topics.closeness[group_idx]),
        float(topics.betweenness[group_idx]),
    ])
    if term.wellformedness is None:
        raise FeatureError("wellformedness", f"term {term.key!r} was never scored")
    values.append(term.wellformedness)
    return KeynessPattern(sublanguage=document.sublanguage, length=term.length,
                          dependent=np.array(values))


def compute_graph_scores(document: Document, candidates: list[CandidateTerm],
                         groups: list[TermGroup], stats: CorpusStats,
                         profile: NGramProfile, in_reference: bool = False) -> GraphScores:
    """Build the term and topic graphs for a document and compute every
    graph-derived score once, for reuse across all of its candidates."""
    term_graph = build_term_graph(document, candidates)
    seeds = {
        "position": {c.key: position_score(c, document) for c in candidates},
        "tfidf": {c.key: tfidf_score(c, profile, stats) for c in candidates},
        "lexical": {c.key: lexical_specificity_score(c, document, stats,
                                                     in_reference=in_reference)
                    for c in candidates},
    }
    group_of = {}
    for g_idx, group in enumerate(groups):
        for member in group.members:
            group_of[member.key] = g_idx
    topic_graph = build_topic_graph(groups, document)
    return GraphScores(
        position_rank=personalized_ranks(term_graph, "position", seeds["position"]),
        tfidf_rank=personalized_ranks(term_graph, "tfidf", seeds["tfidf"]),
        lexical_rank=personalized_ranks(term_graph, "lexical", seeds["lexical"]),
        single_rank=personalized_ranks(term_graph, "uniform"),
        group_of=group_of,
        topics=topic_scores(topic_graph),
    )


def assemble_document_patterns(document: Document, candidates: list[CandidateTerm],
                               groups: list[TermGroup], stats: CorpusStats,
                               in_reference: bool = False) -> dict:
    """Patterns for every candidate of a document, keyed by term key."""
    profile = ngram_frequency_profile(document)
    graph_scores = compute_graph_scores(document, candidates, groups, stats, profile,
                                        in_reference=in_reference)
    return {
        c.key: assemble_pattern(c, document, stats, profile, graph_scores,
                                in_reference=in_reference)
        for c in candidates
    }
