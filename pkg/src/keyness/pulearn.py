"""Positive-unlabelled training for both networks, plus the excess-risk bound.

Instances whose term key matches a gold keyword of their document form the
labelled positive set; everything else is unlabelled.  Each training run
bootstrap-samples the unlabelled pool into the negative side: the identifier
samples p instances per dataset (re-filtered by the current model every fifth
epoch), the ranker samples round(p * theta).  The training set is rebuilt
only at epoch 1 and at epochs divisible by five.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass

import numpy as np

from .candidates import (CandidateTerm, cluster_terms, generate_ngrams,
                         quadruples, select_candidates)
from .corpus import CorpusStats, Dataset, Document
from .errors import TrainingError
from .features import KeynessPattern, assemble_document_patterns
from .neural import (IdentifierModel, RankerModel, TrainingConfig,
                     batch_indices, build_quad_vocabs, train_step)

log = logging.getLogger(__name__)


@dataclass
class Instance:
    dataset: str
    doc_id: str
    key: str
    positive: bool
    quads: list | None = None
    pattern: KeynessPattern | None = None


@dataclass
class PUSplit:
    positives: list[Instance]
    unlabelled: list[Instance]

    @property
    def p(self) -> int:
        return len(self.positives)


def pu_split(instances: list[Instance]) -> PUSplit:
    positives = [i for i in instances if i.positive]
    unlabelled = [i for i in instances if not i.positive]
    return PUSplit(positives=positives, unlabelled=unlabelled)


def sample_unlabelled(unlabelled: list, count: int, seed) -> list:
    """Uniform sample without replacement of min(count, |U|) instances;
    deterministic for a given seed."""
    if count <= 0:
        return []
    count = min(count, len(unlabelled))
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(unlabelled), size=count, replace=False)
    return [unlabelled[i] for i in chosen]


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


# ---------------------------------------------------------------------------
# Excess-risk bound
# ---------------------------------------------------------------------------

@dataclass
class RiskBoundInput:
    a: float
    p: int
    theta: float
    nu_hat: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("a must be positive")
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.theta <= 0:
            raise ValueError("theta must be > 0")
        if not 0.0 <= self.nu_hat < 1.0:
            raise ValueError("nu_hat must lie in [0, 1)")


def excess_risk_bound(bound_input: RiskBoundInput) -> float:
    """a * p^(-1/2) * (1 + theta^(-1/2)) / (1 - nu_hat)."""
    i = bound_input
    return i.a * (i.p ** -0.5) * (1.0 + i.theta ** -0.5) / (1.0 - i.nu_hat)


# ---------------------------------------------------------------------------
# Identifier training
# ---------------------------------------------------------------------------

def identifier_instances(dataset: Dataset) -> list[Instance]:
    out = []
    for doc in dataset.documents:
        gold = set(doc.gold_keys())
        for term in generate_ngrams(doc):
            out.append(Instance(dataset=dataset.name, doc_id=doc.id, key=term.key,
                                positive=term.key in gold,
                                quads=quadruples(term, doc)))
    return out


def _usable_splits(per_dataset: dict[str, PUSplit]) -> dict[str, PUSplit]:
    usable = {}
    for name, split in per_dataset.items():
        if split.p < 1:
            log.warning("dataset %s has no positive instances; skipped", name)
            continue
        usable[name] = split
    if not usable:
        raise TrainingError("no dataset contains a positive instance")
    return usable


def _train_set_digest(train_set: list[Instance]) -> str:
    blob = "\n".join(sorted(f"{i.dataset}\t{i.doc_id}\t{i.key}\t{int(i.positive)}"
                            for i in train_set))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def _run_epochs(model, splits: dict[str, PUSplit], config: TrainingConfig,
                build_train_set, forward_inputs) -> list[dict]:
    """Shared epoch loop: refresh the training set at epoch 1 and at every
    epoch divisible by `refresh_every`, train on shuffled batches otherwise."""
    records = []
    train_set: list[Instance] = []
    digest = ""
    for epoch in range(1, config.epochs + 1):
        refreshed = epoch == 1 or epoch % config.refresh_every == 0
        detail = {}
        if refreshed:
            train_set = []
            for ds_index, (name, split) in enumerate(splits.items()):
                sampled, info = build_train_set(epoch, ds_index, name, split)
                train_set.extend(split.positives)
                train_set.extend(sampled)
                detail[name] = info
            digest = _train_set_digest(train_set)
        labels = np.array([1 if inst.positive else 0 for inst in train_set])
        inputs = forward_inputs(train_set)
        losses = []
        shuffle_rng = np.random.default_rng([config.effective_sampling_seed, epoch, 0xBA7C])
        for batch_no, idx in enumerate(batch_indices(len(train_set), config.batch_size,
                                                     shuffle_rng)):
            batch_inputs = [inputs[i] for i in idx]
            losses.append(train_step(model, batch_inputs, labels[idx],
                                     config.learning_rate,
                                     batch_id=f"epoch{epoch}/batch{batch_no}",
                                     clip_norm=config.clip_norm))
        records.append({
            "epoch": epoch,
            "refreshed": refreshed,
            "train_size": len(train_set),
            "train_digest": digest,
            "datasets": detail,
            "mean_loss": float(np.mean(losses)) if losses else None,
        })
    return records


def train_identifier(datasets: list[Dataset], config: TrainingConfig
                     ) -> tuple[IdentifierModel, list[dict]]:
    """Train the identification network with per-dataset bootstrap sampling.

    Epoch 1 samples min(p, |U|) unlabelled instances per dataset; refresh
    epochs resample and drop instances the current model already scores
    well-formed beyond the epsilon filter (omega > epsilon).
    """
    splits = _usable_splits({ds.name: pu_split(identifier_instances(ds))
                             for ds in datasets})
    all_quads = [inst.quads
                 for split in splits.values()
                 for inst in split.positives + split.unlabelled]
    vocabs = build_quad_vocabs(all_quads)
    model = IdentifierModel(vocabs, dims=config.model_dims.get("identifier"),
                            seed=config.seed)

    def build_train_set(epoch, ds_index, name, split):
        sampled = sample_unlabelled(split.unlabelled, split.p,
                                    seed=[config.effective_sampling_seed, epoch, ds_index])
        filtered_out = 0
        if epoch > 1:
            omegas = model.wellformedness_batch([inst.quads for inst in sampled])
            kept = [inst for inst, omega in zip(sampled, omegas)
                    if omega <= config.epsilon]
            filtered_out = len(sampled) - len(kept)
            if filtered_out:
                log.info("epoch %d dataset %s: filter removed %d of %d sampled "
                         "instances", epoch, name, filtered_out, len(sampled))
            sampled = kept
        return sampled, {"positives": split.p, "pool": len(split.unlabelled),
                         "sampled": len(sampled), "filtered_out": filtered_out}

    records = _run_epochs(model, splits, config, build_train_set,
                          forward_inputs=lambda insts: [i.quads for i in insts])
    return model, records


# ---------------------------------------------------------------------------
# Ranker training
# ---------------------------------------------------------------------------

def ranker_instances(dataset: Dataset, identifier: IdentifierModel,
                     stats: CorpusStats, embedder,
                     distance_threshold: float = 0.1) -> list[Instance]:
    """Identifier-selected candidates of every document, with full patterns."""
    out = []
    for doc in dataset.documents:
        gold = set(doc.gold_keys())
        candidates = select_candidates(identifier, doc)
        if not candidates:
            continue
        groups = cluster_terms(candidates, embedder, distance_threshold)
        patterns = assemble_document_patterns(doc, candidates, groups, stats,
                                              in_reference=True)
        for cand in candidates:
            out.append(Instance(dataset=dataset.name, doc_id=doc.id, key=cand.key,
                                positive=cand.key in gold,
                                pattern=patterns[cand.key]))
    return out


def train_ranker(datasets: list[Dataset], config: TrainingConfig,
                 identifier: IdentifierModel, stats: CorpusStats, embedder,
                 distance_threshold: float = 0.1,
                 instances_by_dataset: dict[str, list[Instance]] | None = None
                 ) -> tuple[RankerModel, list[dict]]:
    """Train the ranking network; each refresh samples round(p * theta)
    unlabelled patterns per dataset as negatives."""
    if instances_by_dataset is None:
        instances_by_dataset = {
            ds.name: ranker_instances(ds, identifier, stats, embedder,
                                      distance_threshold)
            for ds in datasets
        }
    splits = _usable_splits({name: pu_split(insts)
                             for name, insts in instances_by_dataset.items()})
    sublanguages = sorted({ds.sublanguage for ds in datasets})
    model = RankerModel(sublanguages, dims=config.model_dims.get("ranker"),
                        seed=config.seed)
    all_patterns = [inst.pattern
                    for split in splits.values()
                    for inst in split.positives + split.unlabelled]
    model.fit_normalization(all_patterns)

    def build_train_set(epoch, ds_index, name, split):
        k = max(1, round_half_up(split.p * config.theta))
        sampled = sample_unlabelled(split.unlabelled, k,
                                    seed=[config.effective_sampling_seed, epoch, ds_index])
        return sampled, {"positives": split.p, "pool": len(split.unlabelled),
                         "sampled": len(sampled),
                         "requested": min(k, len(split.unlabelled))}

    records = _run_epochs(model, splits, config, build_train_set,
                          forward_inputs=lambda insts: [i.pattern for i in insts])
    return model, records
