"""Parsed-document corpus: CoNLL-U loading, dataset manifests, frequency statistics.

Documents arrive pre-parsed (tokenization, lemmas, POS, dependencies and
case/stopword flags are upstream concerns).  Everything downstream keys terms
by their lowercase lemma sequence, so frequency counting, clustering and gold
matching all agree on what a "term" is.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ManifestError, ParseError, StatsFormatError

log = logging.getLogger(__name__)

MAX_NGRAM = 4
STATS_FORMAT_VERSION = 1

UPPER = "UPPER-CASE"
LOWER = "LOWER-CASE"

#: Closed sublanguage vocabulary; anything else is coerced to "unknown".
KNOWN_SUBLANGUAGES = (
    "misc-news",
    "agriculture",
    "computer-science",
    "science",
    "medicine",
    "unknown",
)

ROOT_HEAD = -1


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    dep_rel: str
    head_index: int  # 0-based within sentence, ROOT_HEAD for the root
    case_status: str  # UPPER or LOWER
    is_stop: bool
    sentence_index: int
    token_index: int

    @property
    def is_punct(self) -> bool:
        return not any(ch.isalnum() for ch in self.surface)

    @property
    def key(self) -> str:
        lemma = self.lemma if self.lemma and self.lemma != "_" else self.surface
        return lemma.lower()


@dataclass
class Document:
    id: str
    sublanguage: str
    sentences: list[list[Token]]
    gold_keywords: list[str] = field(default_factory=list)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def word_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    def gold_keys(self) -> list[str]:
        """Gold keywords as term keys, order preserved, de-duplicated."""
        seen = []
        for kw in self.gold_keywords:
            key = normalize_key(kw)
            if key and key not in seen:
                seen.append(key)
        return seen


@dataclass
class Dataset:
    name: str
    sublanguage: str
    split: str  # "train" or "test"
    documents: list[Document]


def normalize_key(text: str) -> str:
    """Lowercase and collapse whitespace; the canonical term-key form."""
    return " ".join(text.lower().split())


def span_key(tokens: list[Token]) -> str:
    return " ".join(t.key for t in tokens)


def iter_term_spans(document: Document, max_n: int = MAX_NGRAM):
    """Yield (key, length, sentence_index, token_index, tokens) for every
    within-sentence ngram window of 1..max_n contiguous non-punctuation tokens.

    Windows touching a punctuation token are dropped rather than stitched
    across it, so punctuation acts as an ngram boundary.
    """
    for s_idx, sentence in enumerate(document.sentences):
        n_tokens = len(sentence)
        for start in range(n_tokens):
            for n in range(1, max_n + 1):
                end = start + n
                if end > n_tokens:
                    break
                window = sentence[start:end]
                if any(t.is_punct for t in window):
                    break  # longer windows from this start contain it too
                yield span_key(window), n, s_idx, start, window


def term_frequencies(document: Document, max_n: int = MAX_NGRAM) -> Counter:
    """Occurrence counts of every term key in the document."""
    counts = Counter()
    for key, _n, _s, _t, _w in iter_term_spans(document, max_n):
        counts[key] += 1
    return counts


# ---------------------------------------------------------------------------
# CoNLL-U loading
# ---------------------------------------------------------------------------

def _parse_misc(misc: str) -> dict:
    out = {}
    if misc and misc != "_":
        for part in misc.split("|"):
            if "=" in part:
                k, v = part.split("=", 1)
                out[k] = v
    return out


def load_parsed_document(path, sublanguage: str | None = None) -> Document:
    """Load one CoNLL-U file into a Document.

    Uses columns FORM, LEMMA, UPOS/XPOS, HEAD and DEPREL; MISC may carry
    Case=Upper|Lower and Stop=Yes|No (case falls back to the surface form,
    stop to No).  Document metadata comes from `# doc_id = ...` and
    `# sublanguage = ...` comment lines; `sublanguage` overrides the latter.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError("file not found", path=str(path))
    doc_id = None
    file_sublanguage = None
    sentences: list[list[Token]] = []
    current: list[tuple] = []  # (line_no, columns)

    def flush():
        if not current:
            return
        tokens = []
        for t_idx, (line_no, cols) in enumerate(current):
            form, lemma, upos, xpos = cols[1], cols[2], cols[3], cols[4]
            if not form:
                raise ParseError("empty FORM", path=str(path), line=line_no)
            try:
                head = int(cols[6])
            except ValueError:
                raise ParseError(f"non-integer HEAD {cols[6]!r}", path=str(path), line=line_no)
            if head < 0 or head > len(current):
                raise ParseError(f"HEAD {head} out of sentence bounds", path=str(path), line=line_no)
            misc = _parse_misc(cols[9] if len(cols) > 9 else "_")
            case = misc.get("Case")
            if case is not None:
                case_status = UPPER if case == "Upper" else LOWER
            else:
                first_alpha = next((ch for ch in form if ch.isalpha()), "")
                case_status = UPPER if first_alpha.isupper() else LOWER
            tokens.append(Token(
                surface=form,
                lemma=lemma,
                pos=xpos if xpos and xpos != "_" else upos,
                dep_rel=cols[7],
                head_index=ROOT_HEAD if head == 0 else head - 1,
                case_status=case_status,
                is_stop=misc.get("Stop") == "Yes",
                sentence_index=len(sentences),
                token_index=t_idx,
            ))
        sentences.append(tokens)
        current.clear()

    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    k, v = body.split("=", 1)
                    k, v = k.strip(), v.strip()
                    if k == "doc_id":
                        doc_id = v
                    elif k == "sublanguage":
                        file_sublanguage = v
                continue
            cols = line.split("\t")
            if len(cols) < 8:
                raise ParseError(f"expected >=8 tab-separated columns, got {len(cols)}",
                                 path=str(path), line=line_no)
            # skip multiword-token ranges and empty nodes
            if "-" in cols[0] or "." in cols[0]:
                continue
            current.append((line_no, cols))
    flush()

    if not sentences:
        raise ParseError("no sentences found", path=str(path))

    chosen = sublanguage or file_sublanguage
    if chosen is None:
        raise ParseError("sublanguage metadata missing and no override given", path=str(path))
    if chosen not in KNOWN_SUBLANGUAGES:
        log.warning("unknown sublanguage %r in %s; using 'unknown'", chosen, path)
        chosen = "unknown"
    return Document(
        id=doc_id or path.stem,
        sublanguage=chosen,
        sentences=sentences,
    )


def load_dataset(manifest_path) -> Dataset:
    """Load a dataset manifest (JSON) and all documents it references.

    Manifest schema: {name, sublanguage, split, documents: [{id, path,
    gold_keywords: [...]}]}.  Document paths are resolved relative to the
    manifest's directory.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise ManifestError(f"manifest not found: {manifest_path}")
    try:
        spec = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {manifest_path}: {exc}")
    for field_name in ("name", "sublanguage", "split", "documents"):
        if field_name not in spec:
            raise ManifestError(f"manifest missing field {field_name!r}: {manifest_path}")
    if spec["split"] not in ("train", "test"):
        raise ManifestError(f"manifest split must be train or test, got {spec['split']!r}")

    sublanguage = spec["sublanguage"]
    if sublanguage not in KNOWN_SUBLANGUAGES:
        log.warning("unknown sublanguage %r in manifest %s; using 'unknown'",
                    sublanguage, manifest_path)
        sublanguage = "unknown"

    base = manifest_path.parent
    documents = []
    seen_ids = set()
    for entry in spec["documents"]:
        doc_path = base / entry["path"]
        if not doc_path.exists():
            raise ManifestError(f"document file not found: {doc_path}")
        doc = load_parsed_document(doc_path, sublanguage=sublanguage)
        doc.id = entry.get("id", doc.id)
        if doc.id in seen_ids:
            raise ManifestError(f"duplicate document id {doc.id!r} in {manifest_path}")
        seen_ids.add(doc.id)
        doc.gold_keywords = [kw.strip() for kw in entry.get("gold_keywords", []) if kw.strip()]
        documents.append(doc)
    return Dataset(name=spec["name"], sublanguage=sublanguage,
                   split=spec["split"], documents=documents)


# ---------------------------------------------------------------------------
# Corpus statistics
# ---------------------------------------------------------------------------

@dataclass
class CorpusStats:
    """Reference-corpus counts backing IDF, relative-rate and specificity scores."""

    document_count: int
    ref_size: int  # total token count of the reference corpus
    doc_frequency: dict[str, int]
    ref_frequency: dict[str, int]

    def save(self, path) -> None:
        payload = {
            "format_version": STATS_FORMAT_VERSION,
            "document_count": self.document_count,
            "ref_size": self.ref_size,
            "doc_frequency": {k: self.doc_frequency[k] for k in sorted(self.doc_frequency)},
            "ref_frequency": {k: self.ref_frequency[k] for k in sorted(self.ref_frequency)},
        }
        Path(path).write_text(json.dumps(payload), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "CorpusStats":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise StatsFormatError(f"cannot read stats file {path}: {exc}")
        version = payload.get("format_version")
        if version != STATS_FORMAT_VERSION:
            raise StatsFormatError(
                f"stats file {path} has format_version {version!r}, "
                f"expected {STATS_FORMAT_VERSION}")
        return cls(
            document_count=payload["document_count"],
            ref_size=payload["ref_size"],
            doc_frequency={k: int(v) for k, v in payload["doc_frequency"].items()},
            ref_frequency={k: int(v) for k, v in payload["ref_frequency"].items()},
        )


def build_corpus_stats(documents: list[Document]) -> CorpusStats:
    """Count document frequencies and total occurrences of every term key (n <= 4).

    Order-independent: permuting the input yields equal maps.
    """
    doc_frequency: Counter = Counter()
    ref_frequency: Counter = Counter()
    ref_size = 0
    for doc in documents:
        counts = term_frequencies(doc)
        for key, freq in counts.items():
            doc_frequency[key] += 1
            ref_frequency[key] += freq
        ref_size += doc.word_count
    return CorpusStats(
        document_count=len(documents),
        ref_size=ref_size,
        doc_frequency=dict(doc_frequency),
        ref_frequency=dict(ref_frequency),
    )


# ---------------------------------------------------------------------------
# Per-document ngram frequency profile
# ---------------------------------------------------------------------------

@dataclass
class NGramProfile:
    """Mean and population standard deviation of distinct-ngram frequencies,
    one pair per ngram length category."""

    mean: dict[int, float]
    std: dict[int, float]
    present: dict[int, bool]

    def category(self, n: int) -> tuple[float, float]:
        if not self.present.get(n, False):
            return 0.0, 0.0
        return self.mean[n], self.std[n]


def ngram_frequency_profile(document: Document, max_n: int = MAX_NGRAM) -> NGramProfile:
    by_length: dict[int, Counter] = {n: Counter() for n in range(1, max_n + 1)}
    for key, n, _s, _t, _w in iter_term_spans(document, max_n):
        by_length[n][key] += 1
    mean, std, present = {}, {}, {}
    for n in range(1, max_n + 1):
        freqs = list(by_length[n].values())
        if not freqs:
            mean[n], std[n], present[n] = 0.0, 0.0, False
            continue
        m = sum(freqs) / len(freqs)
        var = sum((f - m) ** 2 for f in freqs) / len(freqs)
        mean[n], std[n], present[n] = m, var ** 0.5, True
    return NGramProfile(mean=mean, std=std, present=present)
