import numpy as np
import pytest

from keyness.corpus import Document, Token


def make_token(surface, lemma=None, pos="NN", dep="nsubj", head=-1,
               sentence_index=0, token_index=0, stop=False, upper=None):
    if lemma is None:
        lemma = surface.lower()
    if upper is None:
        upper = surface[:1].isupper()
    return Token(surface=surface, lemma=lemma, pos=pos, dep_rel=dep,
                 head_index=head, case_status="UPPER-CASE" if upper else "LOWER-CASE",
                 is_stop=stop, sentence_index=sentence_index, token_index=token_index)


def make_document(sentences_words, doc_id="doc", sublanguage="misc-news",
                  gold_keywords=None):
    """Build a Document from lists of (surface, kwargs) or plain strings."""
    sentences = []
    for s_idx, words in enumerate(sentences_words):
        tokens = []
        for t_idx, word in enumerate(words):
            if isinstance(word, tuple):
                surface, kwargs = word
            else:
                surface, kwargs = word, {}
            tokens.append(make_token(surface, sentence_index=s_idx,
                                     token_index=t_idx, **kwargs))
        sentences.append(tokens)
    return Document(id=doc_id, sublanguage=sublanguage, sentences=sentences,
                    gold_keywords=gold_keywords or [])


@pytest.fixture
def simple_document():
    return make_document([
        ["Atlantic", "hurricane", "season", "began", "early", "."],
        ["The", "storm", "hit", "the", "coast", "."],
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def write_corpus_to_disk(tmp_path, name="micro", sublanguage="misc-news",
                         n_docs=6, split="train"):
    """Write a small parsed corpus + manifest; returns the manifest path.

    Each document carries two early, recurring two-word gold topics plus
    stopword/verb/punctuation material, enough for end-to-end training."""
    import json
    topics = [("solar", "farm"), ("debt", "ceiling"), ("heat", "wave"),
              ("peace", "talk"), ("tax", "reform"), ("grain", "export"),
              ("wage", "growth"), ("oil", "pipeline")]
    fillers = ["figure", "report", "region", "measure"]
    docs_dir = tmp_path / name
    docs_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i in range(n_docs):
        a = topics[i % len(topics)]
        b = topics[(i + 3) % len(topics)]
        c = topics[(i + 5) % len(topics)]  # featured but not gold
        doc_id = f"{name}-{i:02d}"
        lines = [f"# doc_id = {doc_id}", f"# sublanguage = {sublanguage}"]

        def sent(rows):
            for j, row in enumerate(rows, start=1):
                lines.append("\t".join([str(j)] + row))
            lines.append("")

        def noun(form, head, dep, stop="No", case="Lower"):
            return [form, form, "NOUN", "NN", "_", str(head), dep, "_",
                    f"Case={case}|Stop={stop}"]

        def verb(form, lemma):
            return [form, lemma, "VERB", "VBD", "_", "0", "root", "_",
                    "Case=Lower|Stop=No"]

        punct = [".", ".", "PUNCT", ".", "_", "3", "punct", "_", "Case=Lower|Stop=No"]
        the = ["the", "the", "DET", "DT", "_", "5", "det", "_", "Case=Lower|Stop=Yes"]
        for _rep in range(2):
            sent([noun(a[0], 2, "compound"), noun(a[1], 3, "nsubj"),
                  verb("grew", "grow"), the,
                  noun(fillers[i % len(fillers)], 3, "obj"), punct])
            sent([noun(b[0], 2, "compound"), noun(b[1], 3, "nsubj"),
                  verb("fell", "fall"), the,
                  noun(fillers[(i + 1) % len(fillers)], 3, "obj"), punct])
        sent([noun(c[0], 2, "compound"), noun(c[1], 3, "nsubj"),
              verb("returned", "return"), the,
              noun(fillers[(i + 2) % len(fillers)], 3, "obj"), punct])
        (docs_dir / f"{doc_id}.conllu").write_text("\n".join(lines), encoding="utf-8")
        entries.append({"id": doc_id, "path": f"{doc_id}.conllu",
                        "gold_keywords": [" ".join(a), " ".join(b)]})
    manifest = docs_dir / f"{split}.manifest.json"
    manifest.write_text(json.dumps({
        "name": f"{name}-{split}", "sublanguage": sublanguage, "split": split,
        "documents": entries}), encoding="utf-8")
    return manifest


def random_document(rng, n_sentences=None, vocab_size=12, doc_id="rand",
                    max_len=9, sublanguage="misc-news"):
    """Random small document over a letter vocabulary, punctuation included."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    n_sentences = n_sentences or int(rng.integers(2, 6))
    sentences = []
    for s in range(n_sentences):
        length = int(rng.integers(2, max_len))
        words = []
        for t in range(length):
            if rng.random() < 0.12:
                words.append((",", {"pos": ",", "dep": "punct"}))
            else:
                surface = vocab[int(rng.integers(0, vocab_size))]
                if rng.random() < 0.25:
                    surface = surface.upper()
                words.append((surface, {"stop": bool(rng.random() < 0.2)}))
        sentences.append(words)
    return make_document(sentences, doc_id=doc_id, sublanguage=sublanguage)
