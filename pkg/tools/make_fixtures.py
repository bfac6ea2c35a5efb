#!/usr/bin/env python3
"""Generate the bundled fixture corpora (news + abstracts) as parsed CoNLL-U.

Deterministic: rerunning reproduces byte-identical files.  Documents are
synthesized from sentence templates with hand-assigned dependency structure.
Each document mixes:
  - gold topics: noun phrases introduced early, recurring across sentences;
  - hidden topics: same construction, deliberately left out of the gold list
    (annotation subjectivity -> positive-unlabelled contamination);
  - distractors: document-unique phrases that appear often but late (high
    TF-IDF, weak everything else);
  - filler built from corpus-wide common vocabulary.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

XPOS_TO_UPOS = {
    "NN": "NOUN", "NNS": "NOUN", "NNP": "PROPN",
    "JJ": "ADJ", "VBD": "VERB", "VBZ": "VERB", "VBG": "VERB", "VB": "VERB",
    "DT": "DET", "IN": "ADP", "RB": "ADV", "CD": "NUM", "PRP": "PRON",
    "CC": "CCONJ", "TO": "PART", ".": "PUNCT", ",": "PUNCT",
}

STOP_WORDS = {"the", "a", "an", "of", "in", "on", "at", "to", "and", "that",
              "this", "it", "we", "for", "with", "by", "as", "is", "was",
              "were", "be", "has", "have", "its"}


# ---------------------------------------------------------------------------
# Phrase inventory
# ---------------------------------------------------------------------------
# A phrase is a list of token specs (form, lemma, xpos, dep) where the last
# token is the syntactic head (its dep is assigned by the sentence template).

def _np(*specs):
    return [list(s) for s in specs]


NEWS_TOPIC_POOL = [
    _np(("climate", "climate", "NN", "compound"), ("summit", "summit", "NN", None)),
    _np(("interest", "interest", "NN", "compound"), ("rate", "rate", "NN", None)),
    _np(("Atlantic", "atlantic", "NNP", "amod"), ("hurricane", "hurricane", "NN", "compound"),
        ("season", "season", "NN", None)),
    _np(("coastal", "coastal", "JJ", "amod"), ("flooding", "flooding", "NN", None)),
    _np(("European", "european", "NNP", "amod"), ("parliament", "parliament", "NN", None)),
    _np(("trade", "trade", "NN", "compound"), ("agreement", "agreement", "NN", None)),
    _np(("oil", "oil", "NN", "compound"), ("pipeline", "pipeline", "NN", None)),
    _np(("wage", "wage", "NN", "compound"), ("growth", "growth", "NN", None)),
    _np(("housing", "housing", "NN", "compound"), ("market", "market", "NN", None)),
    _np(("grain", "grain", "NN", "compound"), ("export", "export", "NN", None)),
    _np(("border", "border", "NN", "compound"), ("security", "security", "NN", None)),
    _np(("election", "election", "NN", "compound"), ("campaign", "campaign", "NN", None)),
    _np(("nuclear", "nuclear", "JJ", "amod"), ("power", "power", "NN", "compound"),
        ("plant", "plant", "NN", None)),
    _np(("drought", "drought", "NN", None)),
    _np(("inflation", "inflation", "NN", None)),
    _np(("wildfire", "wildfire", "NN", None)),
    _np(("refugee", "refugee", "NN", "compound"), ("crisis", "crisis", "NN", None)),
    _np(("tax", "tax", "NN", "compound"), ("reform", "reform", "NN", None)),
    _np(("supreme", "supreme", "JJ", "amod"), ("court", "court", "NN", None)),
    _np(("emergency", "emergency", "NN", "compound"), ("landing", "landing", "NN", None)),
    _np(("flight", "flight", "NN", "compound"), ("crew", "crew", "NN", None)),
    _np(("labor", "labor", "NN", "compound"), ("strike", "strike", "NN", None)),
    _np(("vaccine", "vaccine", "NN", "compound"), ("rollout", "rollout", "NN", None)),
    _np(("heat", "heat", "NN", "compound"), ("wave", "wave", "NN", None)),
    _np(("steel", "steel", "NN", "compound"), ("tariff", "tariff", "NN", None)),
    _np(("debt", "debt", "NN", "compound"), ("ceiling", "ceiling", "NN", None)),
    _np(("peace", "peace", "NN", "compound"), ("talks", "talk", "NNS", None)),
    _np(("state", "state", "NN", "compound"), ("budget", "budget", "NN", None)),
    _np(("football", "football", "NN", "compound"), ("league", "league", "NN", None)),
    _np(("transit", "transit", "NN", "compound"), ("workers", "worker", "NNS", None)),
    _np(("currency", "currency", "NN", "compound"), ("devaluation", "devaluation", "NN", None)),
    _np(("Arctic", "arctic", "NNP", "amod"), ("expedition", "expedition", "NN", None)),
    _np(("solar", "solar", "JJ", "amod"), ("farm", "farm", "NN", None)),
    _np(("police", "police", "NN", "compound"), ("reform", "reform", "NN", None)),
    _np(("opposition", "opposition", "NN", "compound"), ("leader", "leader", "NN", None)),
    _np(("earthquake", "earthquake", "NN", None)),
    _np(("ceasefire", "ceasefire", "NN", None)),
    _np(("pension", "pension", "NN", "compound"), ("fund", "fund", "NN", None)),
    _np(("airline", "airline", "NN", "compound"), ("merger", "merger", "NN", None)),
    _np(("rail", "rail", "NN", "compound"), ("network", "network", "NN", None)),
    _np(("Pacific", "pacific", "NNP", "amod"), ("typhoon", "typhoon", "NN", None)),
    _np(("harvest", "harvest", "NN", "compound"), ("festival", "festival", "NN", None)),
    _np(("media", "media", "NN", "compound"), ("regulation", "regulation", "NN", None)),
    _np(("energy", "energy", "NN", "compound"), ("subsidy", "subsidy", "NN", None)),
    _np(("water", "water", "NN", "compound"), ("shortage", "shortage", "NN", None)),
    _np(("military", "military", "JJ", "amod"), ("exercise", "exercise", "NN", None)),
    _np(("corruption", "corruption", "NN", "compound"), ("inquiry", "inquiry", "NN", None)),
    _np(("ozone", "ozone", "NN", "compound"), ("layer", "layer", "NN", None)),
    _np(("trade", "trade", "NN", "compound"), ("deficit", "deficit", "NN", None)),
    _np(("tourism", "tourism", "NN", "compound"), ("sector", "sector", "NN", None)),
]

ABS_TOPIC_POOL = [
    _np(("neural", "neural", "JJ", "amod"), ("network", "network", "NN", None)),
    _np(("gene", "gene", "NN", "compound"), ("expression", "expression", "NN", None)),
    _np(("transfer", "transfer", "NN", "compound"), ("learning", "learning", "NN", None)),
    _np(("protein", "protein", "NN", "compound"), ("folding", "folding", "NN", None)),
    _np(("quantum", "quantum", "NN", "compound"), ("computing", "computing", "NN", None)),
    _np(("image", "image", "NN", "compound"), ("segmentation", "segmentation", "NN", None)),
    _np(("carbon", "carbon", "NN", "compound"), ("capture", "capture", "NN", None)),
    _np(("cell", "cell", "NN", "compound"), ("membrane", "membrane", "NN", None)),
    _np(("reinforcement", "reinforcement", "NN", "compound"), ("learning", "learning", "NN", None)),
    _np(("graph", "graph", "NN", "compound"), ("embedding", "embedding", "NN", None)),
    _np(("speech", "speech", "NN", "compound"), ("recognition", "recognition", "NN", None)),
    _np(("drug", "drug", "NN", "compound"), ("discovery", "discovery", "NN", None)),
    _np(("climate", "climate", "NN", "compound"), ("model", "model", "NN", None)),
    _np(("wind", "wind", "NN", "compound"), ("turbine", "turbine", "NN", None)),
    _np(("language", "language", "NN", "compound"), ("model", "model", "NN", None)),
    _np(("semantic", "semantic", "JJ", "amod"), ("parsing", "parsing", "NN", None)),
    _np(("stem", "stem", "NN", "compound"), ("cell", "cell", "NN", None)),
    _np(("anomaly", "anomaly", "NN", "compound"), ("detection", "detection", "NN", None)),
    _np(("knowledge", "knowledge", "NN", "compound"), ("graph", "graph", "NN", None)),
    _np(("optical", "optical", "JJ", "amod"), ("sensor", "sensor", "NN", None)),
    _np(("soil", "soil", "NN", "compound"), ("erosion", "erosion", "NN", None)),
    _np(("tumor", "tumor", "NN", "compound"), ("growth", "growth", "NN", None)),
    _np(("particle", "particle", "NN", "compound"), ("accelerator", "accelerator", "NN", None)),
    _np(("memory", "memory", "NN", "compound"), ("consolidation", "consolidation", "NN", None)),
    _np(("signal", "signal", "NN", "compound"), ("processing", "processing", "NN", None)),
]

# document-unique distractor material (frequent but late)
DISTRACTOR_FIRST = ["quarterly", "regional", "internal", "preliminary", "updated",
                    "revised", "joint", "formal", "detailed", "technical"]
DISTRACTOR_SECOND = ["memorandum", "briefing", "committee", "spokesman", "statement",
                     "projection", "schedule", "document", "session", "panel"]

PERSON_FIRST = ["John", "Maria", "Ahmed", "Wei", "Elena", "Tomas", "Priya", "Kofi"]
PERSON_LAST = ["Smith", "Garcia", "Hassan", "Chen", "Petrova", "Novak", "Rao", "Mensah"]

COMMON_NOUNS = [("report", "report", "NN"), ("officials", "official", "NNS"),
                ("residents", "resident", "NNS"), ("figures", "figure", "NNS"),
                ("measures", "measure", "NNS"), ("response", "response", "NN"),
                ("situation", "situation", "NN"), ("decision", "decision", "NN"),
                ("week", "week", "NN"), ("region", "region", "NN"),
                ("country", "country", "NN"), ("city", "city", "NN")]
ABS_COMMON_NOUNS = [("results", "result", "NNS"), ("method", "method", "NN"),
                    ("approach", "approach", "NN"), ("experiments", "experiment", "NNS"),
                    ("data", "data", "NN"), ("baseline", "baseline", "NN"),
                    ("performance", "performance", "NN"), ("analysis", "analysis", "NN"),
                    ("evaluation", "evaluation", "NN"), ("framework", "framework", "NN")]

VERBS_PAST = [("reached", "reach"), ("shaped", "shape"), ("disrupted", "disrupt"),
              ("raised", "raise"), ("delayed", "delay"), ("dominated", "dominate"),
              ("threatened", "threaten"), ("followed", "follow"), ("affected", "affect"),
              ("revived", "revive")]
VERBS_PRES = [("shows", "show"), ("improves", "improve"), ("reduces", "reduce"),
              ("affects", "affect"), ("predicts", "predict"), ("supports", "support"),
              ("captures", "capture"), ("outperforms", "outperform")]
PLACES = [("Geneva", "geneva", "NNP"), ("Lisbon", "lisbon", "NNP"),
          ("Jakarta", "jakarta", "NNP"), ("Nairobi", "nairobi", "NNP"),
          ("Oslo", "oslo", "NNP"), ("Lima", "lima", "NNP")]
DAYS = [("Monday", "monday", "NNP"), ("Tuesday", "tuesday", "NNP"),
        ("Friday", "friday", "NNP"), ("Sunday", "sunday", "NNP")]


class Sentence:
    """Token accumulator with 1-based head bookkeeping."""

    def __init__(self):
        self.rows = []  # [form, lemma, xpos, head(1-based), dep]

    def add(self, form, lemma, xpos, head, dep) -> int:
        self.rows.append([form, lemma, xpos, head, dep])
        return len(self.rows)

    def add_phrase(self, phrase, outer_dep, det: str | None = None,
                   capitalize_first: bool = False) -> int:
        """Append an NP; returns the 1-based index of its head token.
        Internal heads point at the phrase head; the head's dep is outer_dep
        and its head index is patched by the caller."""
        start = len(self.rows) + 1
        if det:
            self.add(det, det.lower(), "DT", -1, "det")
        head_pos = start + (1 if det else 0) + len(phrase) - 1
        if det:
            self.rows[start - 1][3] = head_pos
        for offset, (form, lemma, xpos, dep) in enumerate(phrase):
            shown = form
            if capitalize_first and offset == 0 and not det and shown[0].islower():
                shown = shown[0].upper() + shown[1:]
            if dep is None:
                self.add(shown, lemma, xpos, -1, outer_dep)
            else:
                self.add(shown, lemma, xpos, head_pos, dep)
        return head_pos

    def patch(self, index: int, head: int) -> None:
        self.rows[index - 1][3] = head

    def finish(self, root_index: int):
        for row in self.rows:
            if row[3] == -1:
                row[3] = root_index
        self.rows[root_index - 1][3] = 0
        self.rows[root_index - 1][4] = "root"
        return self.rows


def svo(subject, verb_pair, obj, place=None, day=None, subj_det="The",
        obj_det="the") -> list:
    """SUBJ verb OBJ [in PLACE] [on DAY] ."""
    s = Sentence()
    subj_head = s.add_phrase(subject, "nsubj", det=subj_det,
                             capitalize_first=subj_det is None)
    verb_idx = s.add(verb_pair[0], verb_pair[1], "VBD", 0, "root")
    obj_head = s.add_phrase(obj, "obj", det=obj_det)
    s.patch(subj_head, verb_idx)
    s.patch(obj_head, verb_idx)
    if place is not None:
        case_idx = s.add("in", "in", "IN", -1, "case")
        place_idx = s.add(place[0], place[1], place[2], verb_idx, "obl")
        s.patch(case_idx, place_idx)
    if day is not None:
        case_idx = s.add("on", "on", "IN", -1, "case")
        day_idx = s.add(day[0], day[1], day[2], verb_idx, "obl")
        s.patch(case_idx, day_idx)
    s.add(".", ".", ".", verb_idx, "punct")
    return s.finish(verb_idx)


def svo_present(subject, verb_pair, obj, subj_det=None, obj_det="the") -> list:
    s = Sentence()
    subj_head = s.add_phrase(subject, "nsubj", det=subj_det,
                             capitalize_first=subj_det is None)
    verb_idx = s.add(verb_pair[0], verb_pair[1], "VBZ", 0, "root")
    obj_head = s.add_phrase(obj, "obj", det=obj_det)
    s.patch(subj_head, verb_idx)
    s.patch(obj_head, verb_idx)
    s.add(".", ".", ".", verb_idx, "punct")
    return s.finish(verb_idx)


def quote_sentence(first, last, obj) -> list:
    """NAME NAME discussed the OBJ ."""
    s = Sentence()
    s.add(first, first.lower(), "NNP", 2, "compound")
    name_idx = s.add(last, last.lower(), "NNP", -1, "nsubj")
    verb_idx = s.add("discussed", "discuss", "VBD", 0, "root")
    obj_head = s.add_phrase(obj, "obj", det="the")
    s.patch(name_idx, verb_idx)
    s.patch(obj_head, verb_idx)
    s.add(".", ".", ".", verb_idx, "punct")
    return s.finish(verb_idx)


def we_study(topic, common) -> list:
    """We study the TOPIC in this COMMON ."""
    s = Sentence()
    s.add("We", "we", "PRP", 2, "nsubj")
    verb_idx = s.add("study", "study", "VB", 0, "root")
    topic_head = s.add_phrase(topic, "obj", det="the")
    s.patch(topic_head, verb_idx)
    case_idx = s.add("in", "in", "IN", -1, "case")
    det_idx = s.add("this", "this", "DT", -1, "det")
    common_idx = s.add(common[0], common[1], common[2], verb_idx, "obl")
    s.patch(case_idx, common_idx)
    s.patch(det_idx, common_idx)
    s.add(".", ".", ".", verb_idx, "punct")
    return s.finish(verb_idx)


# ---------------------------------------------------------------------------
# Document assembly
# ---------------------------------------------------------------------------

def pick(rng, pool):
    return pool[int(rng.integers(0, len(pool)))]


HEADLINE_TOPICS = 8  # pool prefix mentioned in passing corpus-wide (high df)


def topic_key(topic) -> str:
    return " ".join(t[1] for t in topic)


def build_news_document(rng, doc_index: int) -> tuple[list, list[str]]:
    """Featured topics are written identically whether or not they end up in
    the gold list; the unlabelled ones model annotation misses."""
    n_headline = 1
    n_regular = int(rng.integers(2, 4))
    n_clones = int(rng.integers(9, 12))  # featured but unlabelled
    headline_ids = rng.choice(HEADLINE_TOPICS, size=n_headline, replace=False)
    regular_ids = rng.choice(len(NEWS_TOPIC_POOL) - HEADLINE_TOPICS,
                             size=n_regular + n_clones, replace=False) + HEADLINE_TOPICS
    featured_ids = list(headline_ids) + list(regular_ids)
    # gold status is independent of which pool a featured topic came from,
    # so pool membership never leaks the label
    n_gold = 1 + n_regular
    gold_pick = rng.permutation(len(featured_ids))[:n_gold]
    gold_topics = [NEWS_TOPIC_POOL[featured_ids[i]] for i in sorted(gold_pick)]
    clone_topics = [NEWS_TOPIC_POOL[featured_ids[i]]
                    for i in range(len(featured_ids)) if i not in set(gold_pick)]
    featured = gold_topics + clone_topics

    distractors = []
    for _ in range(2):
        distractors.append(_np(
            (pick(rng, DISTRACTOR_FIRST), pick(rng, DISTRACTOR_FIRST), "JJ", "amod"),
            (pick(rng, DISTRACTOR_SECOND), pick(rng, DISTRACTOR_SECOND), "NN", None)))
    person = (pick(rng, PERSON_FIRST), pick(rng, PERSON_LAST))

    # about a quarter of multiword featured topics only surface in the body;
    # single-word topics always debut early in subject position
    intro = [featured[i] for i in rng.permutation(len(featured))]
    late_intro = []

    sentences = []
    while intro:
        subj = intro.pop(0)
        obj = None
        if intro and len(intro[0]) > 1 and rng.random() < 0.55:
            obj = intro.pop(0)
        if obj is None:
            common = pick(rng, COMMON_NOUNS)
            obj = _np((common[0], common[1], common[2], None))
        sentences.append(svo(subj, pick(rng, VERBS_PAST), obj,
                             place=pick(rng, PLACES) if rng.random() < 0.4 else None,
                             day=pick(rng, DAYS) if rng.random() < 0.3 else None))
        if rng.random() < 0.4:
            common = pick(rng, COMMON_NOUNS)
            sentences.append(svo(_np((common[0], common[1], common[2], None)),
                                 pick(rng, VERBS_PAST),
                                 _np(tuple(pick(rng, COMMON_NOUNS)) + (None,))))
    # body: revisits for dispersion and co-occurrence, plus filler
    revisit = list(late_intro)
    for topic in featured:
        revisit.extend([topic] * int(rng.integers(1, 4)))
    revisit = [revisit[i] for i in rng.permutation(len(revisit))]
    while revisit:
        subj = revisit.pop(0)
        obj = revisit.pop(0) if revisit and rng.random() < 0.45 else pick(rng, COMMON_NOUNS)
        obj_phrase = obj if isinstance(obj, list) else _np((obj[0], obj[1], obj[2], None))
        sentences.append(svo(subj, pick(rng, VERBS_PAST), obj_phrase,
                             place=pick(rng, PLACES) if rng.random() < 0.3 else None))
        if rng.random() < 0.3:
            common = pick(rng, COMMON_NOUNS)
            sentences.append(svo(_np((common[0], common[1], common[2], None)),
                                 pick(rng, VERBS_PAST),
                                 _np(tuple(pick(rng, COMMON_NOUNS)) + (None,))))
    # tail: document-unique distractor phrases, repeated, plus person quotes;
    # passing mentions of corpus-wide headline topics that are not featured here
    tail = []
    for distractor in distractors:
        for _ in range(int(rng.integers(3, 6))):
            tail.append(svo(distractor, pick(rng, VERBS_PAST),
                            _np(tuple(pick(rng, COMMON_NOUNS)) + (None,))))
    for _ in range(int(rng.integers(3, 6))):
        tail.append(quote_sentence(person[0], person[1], pick(rng, distractors)))
    used_keys = {topic_key(t) for t in featured}
    for i in range(HEADLINE_TOPICS):
        topic = NEWS_TOPIC_POOL[i]
        if topic_key(topic) in used_keys:
            continue
        if rng.random() < 0.6:
            used_keys.add(topic_key(topic))
            tail.append(svo(topic, pick(rng, VERBS_PAST),
                            _np(tuple(pick(rng, COMMON_NOUNS)) + (None,))))
    tail = [tail[i] for i in rng.permutation(len(tail))]
    sentences.extend(tail)
    gold_keys = [topic_key(topic) for topic in gold_topics]
    # one plausible absent gold (a topic that never occurs in this document)
    unused = [t for t in NEWS_TOPIC_POOL if topic_key(t) not in used_keys]
    if unused:
        gold_keys.append(topic_key(pick(rng, unused)))
    return sentences, gold_keys


def build_abstract_document(rng, doc_index: int) -> tuple[list, list[str]]:
    n_gold = int(rng.integers(4, 6))
    n_clones = int(rng.integers(1, 3))
    chosen = rng.choice(len(ABS_TOPIC_POOL), size=n_gold + n_clones, replace=False)
    gold_topics = [ABS_TOPIC_POOL[i] for i in chosen[:n_gold]]
    clone_topics = [ABS_TOPIC_POOL[i] for i in chosen[n_gold:]]
    featured = gold_topics + clone_topics

    intro, late_intro = [], []
    for topic in (featured[i] for i in rng.permutation(len(featured))):
        (late_intro if rng.random() < 0.25 else intro).append(topic)

    sentences = []
    for topic in intro[:2]:
        sentences.append(we_study(topic, pick(rng, ABS_COMMON_NOUNS)))
    rest = intro[2:]
    while rest:
        subj = rest.pop(0)
        obj = rest.pop(0) if rest and rng.random() < 0.5 else pick(rng, ABS_COMMON_NOUNS)
        obj_phrase = obj if isinstance(obj, list) else _np((obj[0], obj[1], obj[2], None))
        sentences.append(svo_present(subj, pick(rng, VERBS_PRES), obj_phrase))
    revisit = list(late_intro)
    for topic in featured:
        revisit.extend([topic] * int(rng.integers(1, 3)))
    revisit = [revisit[i] for i in rng.permutation(len(revisit))]
    while revisit:
        subj = revisit.pop(0)
        obj = revisit.pop(0) if revisit and rng.random() < 0.5 else pick(rng, ABS_COMMON_NOUNS)
        obj_phrase = obj if isinstance(obj, list) else _np((obj[0], obj[1], obj[2], None))
        sentences.append(svo_present(subj, pick(rng, VERBS_PRES), obj_phrase))
        if rng.random() < 0.3:
            a, b = pick(rng, ABS_COMMON_NOUNS), pick(rng, ABS_COMMON_NOUNS)
            sentences.append(svo_present(_np((a[0], a[1], a[2], None)),
                                         pick(rng, VERBS_PRES),
                                         _np((b[0], b[1], b[2], None))))
    gold_keys = [topic_key(topic) for topic in gold_topics]
    return sentences, gold_keys


# ---------------------------------------------------------------------------
# CoNLL-U output
# ---------------------------------------------------------------------------

def write_conllu(path: Path, doc_id: str, sublanguage: str, sentences: list) -> None:
    lines = [f"# doc_id = {doc_id}", f"# sublanguage = {sublanguage}"]
    for rows in sentences:
        for i, (form, lemma, xpos, head, dep) in enumerate(rows, start=1):
            upos = XPOS_TO_UPOS[xpos]
            first_alpha = next((ch for ch in form if ch.isalpha()), "")
            case = "Upper" if first_alpha.isupper() else "Lower"
            stop = "Yes" if lemma in STOP_WORDS else "No"
            misc = f"Case={case}|Stop={stop}"
            lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{dep}\t_\t{misc}")
        lines.append("")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def build_corpus(name: str, sublanguage: str, count: int, builder, seed: int,
                 train_fraction: float = 0.8) -> None:
    out_dir = FIXTURES / name
    docs_dir = out_dir / "docs"
    docs_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    entries = []
    for i in range(count):
        doc_id = f"{name}-{i:03d}"
        sentences, gold = builder(rng, i)
        write_conllu(docs_dir / f"{doc_id}.conllu", doc_id, sublanguage, sentences)
        entries.append({"id": doc_id, "path": f"docs/{doc_id}.conllu",
                        "gold_keywords": gold})
    split_at = int(round(count * train_fraction))
    order = np.random.default_rng(seed + 1).permutation(count)
    train_ids = sorted(int(i) for i in order[:split_at])
    test_ids = sorted(int(i) for i in order[split_at:])
    for split, ids in (("train", train_ids), ("test", test_ids)):
        manifest = {
            "name": f"{name}-{split}",
            "sublanguage": sublanguage,
            "split": split,
            "documents": [entries[i] for i in ids],
        }
        (out_dir / f"{split}.manifest.json").write_text(
            json.dumps(manifest, indent=1), encoding="utf-8")


def main() -> int:
    build_corpus("news", "misc-news", count=120, builder=build_news_document, seed=11)
    build_corpus("abstracts", "science", count=40, builder=build_abstract_document, seed=23)
    for name in ("news", "abstracts"):
        manifest = json.loads((FIXTURES / name / "train.manifest.json").read_text())
        golds = [len(d["gold_keywords"]) for d in manifest["documents"]]
        print(f"{name}: {len(golds)} train docs, avg {np.mean(golds):.2f} gold keywords")
    return 0


if __name__ == "__main__":
    sys.exit(main())
