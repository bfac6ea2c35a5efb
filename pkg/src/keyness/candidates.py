"""Candidate-term generation, well-formedness scoring and term grouping.

An ngram becomes a candidate term when the identification model scores it
well-formed (omega > 0).  Candidates are then clustered into term groups so
that semantically equivalent surface variants are ranked and evaluated as one
topic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .clustering import average_linkage_labels
from .corpus import Document, iter_term_spans

log = logging.getLogger(__name__)

UNK = "UNK"
QUAD_LEN = 4

IS_STOP = "IS-STOP"
NOT_STOP = "NOT-STOP"


class Quadruple(NamedTuple):
    pos: str
    case_status: str
    is_stop: str
    dep_type: str


PAD_QUAD = Quadruple(UNK, UNK, UNK, UNK)


@dataclass
class CandidateTerm:
    key: str
    length: int
    occurrences: list[tuple[int, int]]  # (sentence_index, token_index)
    surface_forms: list[str]
    wellformedness: float | None = None


@dataclass
class TermGroup:
    members: list[CandidateTerm]
    representative: CandidateTerm | None = None

    def keys(self) -> list[str]:
        return [m.key for m in self.members]


def generate_ngrams(document: Document) -> list[CandidateTerm]:
    """One CandidateTerm per distinct term key, carrying every occurrence.
    Spans stay within sentences and never include punctuation tokens."""
    by_key: dict[str, CandidateTerm] = {}
    for key, n, s_idx, t_idx, window in iter_term_spans(document):
        term = by_key.get(key)
        if term is None:
            term = CandidateTerm(key=key, length=n, occurrences=[], surface_forms=[])
            by_key[key] = term
        term.occurrences.append((s_idx, t_idx))
        term.surface_forms.append(" ".join(t.surface for t in window))
    return list(by_key.values())


def quadruples(term: CandidateTerm, document: Document) -> list[Quadruple]:
    """Word-level feature quadruples from the term's first occurrence,
    padded with all-UNK entries to a fixed length of four."""
    s_idx, t_idx = term.occurrences[0]
    sentence = document.sentences[s_idx]
    quads = []
    for token in sentence[t_idx:t_idx + term.length]:
        quads.append(Quadruple(
            pos=token.pos,
            case_status=token.case_status,
            is_stop=IS_STOP if token.is_stop else NOT_STOP,
            dep_type=token.dep_rel,
        ))
    while len(quads) < QUAD_LEN:
        quads.append(PAD_QUAD)
    return quads


def wellformedness(model, term: CandidateTerm, document: Document) -> float:
    """omega = W - I as produced by the identification model; in [-1, 1]."""
    ill, well = model.forward_one(quadruples(term, document))
    return float(well - ill)


def select_candidates(model, document: Document,
                      ngrams: list[CandidateTerm] | None = None) -> list[CandidateTerm]:
    """Score every generated ngram and keep exactly those with omega > 0."""
    if ngrams is None:
        ngrams = generate_ngrams(document)
    if not ngrams:
        return []
    quads = [quadruples(t, document) for t in ngrams]
    omegas = model.wellformedness_batch(quads)
    selected = []
    for term, omega in zip(ngrams, omegas):
        term.wellformedness = float(omega)
        if omega > 0.0:
            selected.append(term)
    return selected


def cluster_terms(candidates: list[CandidateTerm],
                  embedder: Callable[[str], np.ndarray],
                  distance_threshold: float = 0.1) -> list[TermGroup]:
    """Partition candidates into term groups by average-linkage clustering of
    their key embeddings under cosine distance.

    Candidates are ordered lexicographically by key before clustering so the
    merge order (and therefore the partition) is deterministic.  A candidate
    whose key the embedder cannot embed becomes a singleton group.
    """
    if not 0.0 < distance_threshold < 1.0:
        raise ValueError(f"distance_threshold must be in (0, 1), got {distance_threshold}")
    if not candidates:
        return []
    ordered = sorted(candidates, key=lambda c: c.key)
    vectors, embeddable, failed = [], [], []
    for cand in ordered:
        try:
            vectors.append(np.asarray(embedder(cand.key), dtype=np.float64))
            embeddable.append(cand)
        except Exception as exc:
            log.warning("embedding failed for %r (%s); keeping as singleton", cand.key, exc)
            failed.append(cand)

    groups: list[TermGroup] = []
    if embeddable:
        labels = average_linkage_labels(np.vstack(vectors), distance_threshold)
        by_label: dict[int, list[CandidateTerm]] = {}
        for cand, lab in zip(embeddable, labels):
            by_label.setdefault(lab, []).append(cand)
        groups.extend(TermGroup(members=members) for members in by_label.values())
    groups.extend(TermGroup(members=[cand]) for cand in failed)
    return groups
