"""Term-key embedding providers for term clustering.

Two built-ins: a self-contained lexical hashing embedder (character trigrams
plus the word bag) and a table embedder backed by a precomputed vector file,
so externally produced sentence-embedding vectors can be dropped in.
"""

from __future__ import annotations

import zlib
from pathlib import Path

import numpy as np

from .errors import KeynessError


class EmbeddingError(KeynessError):
    pass


class LexicalEmbedder:
    """Hash character trigrams and whole words of a term key into a fixed-size
    signed-count vector, L2-normalized.  Deterministic, no external data."""

    def __init__(self, dim: int = 256):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim

    def _features(self, key: str):
        padded = f" {key} "
        for i in range(len(padded) - 2):
            yield padded[i:i + 3]
        for word in key.split():
            yield f"w:{word}"

    def __call__(self, key: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for feat in self._features(key):
            h = zlib.crc32(feat.encode("utf-8"))
            sign = 1.0 if (h >> 31) & 1 else -1.0
            vec[h % self.dim] += sign
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
        return vec


class TableEmbedder:
    """Look up vectors from an in-memory table; unknown keys raise."""

    def __init__(self, table: dict[str, np.ndarray], dim: int):
        self.table = table
        self.dim = dim

    def __call__(self, key: str) -> np.ndarray:
        try:
            return self.table[key]
        except KeyError:
            raise EmbeddingError(f"no embedding for term key {key!r}")

    @classmethod
    def from_file(cls, path) -> "TableEmbedder":
        """Read `key<TAB>v1 v2 ... vd` lines; line 1 declares the dimension."""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines:
            raise EmbeddingError(f"empty embedding table: {path}")
        try:
            dim = int(lines[0].strip())
        except ValueError:
            raise EmbeddingError(f"first line of {path} must declare the dimension")
        table = {}
        for line_no, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            key, _, values = line.partition("\t")
            vec = np.array([float(x) for x in values.split()], dtype=np.float64)
            if vec.shape != (dim,):
                raise EmbeddingError(
                    f"{path}:{line_no}: expected {dim} values, got {vec.shape[0]}")
            table[key] = vec
        return cls(table, dim)
