"""Candidate identification network.

Maps a four-slot sequence of word quadruples (POS, case, stopword flag,
dependency type) to a two-way softmax over ill-formed / well-formed, from
which omega = W - I decides candidacy.
"""

from __future__ import annotations

import numpy as np

from ..candidates import QUAD_LEN, UNK, Quadruple
from . import autodiff as ad
from .layers import (Conv1d, EmbeddingTable, Layer, Linear,
                     TransformerEncoderLayer)

QUAD_FIELDS = ("pos", "case_status", "is_stop", "dep_type")

DEFAULT_DIMS = {
    "pos_dim": 16,
    "case_dim": 4,
    "stop_dim": 4,
    "dep_dim": 16,
    "conv_channels": 64,
    "heads": 4,
    "ff_dim": 128,
}


def build_quad_vocabs(quad_sequences) -> dict[str, list[str]]:
    """Vocabulary per quadruple field from training sequences; index 0 is UNK."""
    seen = {f: set() for f in QUAD_FIELDS}
    for quads in quad_sequences:
        for quad in quads:
            for field, value in zip(QUAD_FIELDS, quad):
                if value != UNK:
                    seen[field].add(value)
    return {f: [UNK] + sorted(values) for f, values in seen.items()}


class IdentifierModel(Layer):
    def __init__(self, vocabs: dict[str, list[str]], dims: dict | None = None,
                 seed: int = 0):
        for field in QUAD_FIELDS:
            if field not in vocabs or vocabs[field][0] != UNK:
                raise ValueError(f"vocab for {field!r} must exist and start with UNK")
        self.vocabs = {f: list(vocabs[f]) for f in QUAD_FIELDS}
        self._index = {f: {tag: i for i, tag in enumerate(v)}
                       for f, v in self.vocabs.items()}
        self.dims = dict(DEFAULT_DIMS, **(dims or {}))
        d = self.dims
        rng = np.random.default_rng(seed)
        self.pos_table = EmbeddingTable(rng, len(self.vocabs["pos"]), d["pos_dim"])
        self.case_table = EmbeddingTable(rng, len(self.vocabs["case_status"]), d["case_dim"])
        self.stop_table = EmbeddingTable(rng, len(self.vocabs["is_stop"]), d["stop_dim"])
        self.dep_table = EmbeddingTable(rng, len(self.vocabs["dep_type"]), d["dep_dim"])
        embed_dim = d["pos_dim"] + d["case_dim"] + d["stop_dim"] + d["dep_dim"]
        channels = d["conv_channels"]
        self.conv1 = Conv1d(rng, embed_dim, channels, kernel=3)
        self.conv2 = Conv1d(rng, channels, channels, kernel=3)
        self.encoder = TransformerEncoderLayer(rng, channels, d["heads"], d["ff_dim"])
        self.fc1 = Linear(rng, channels, channels)
        self.fc2 = Linear(rng, channels, 2)

    # ------------------------------------------------------------------
    def encode(self, quad_sequences: list[list[Quadruple]]) -> dict[str, np.ndarray]:
        """Map tags to vocabulary indices; anything unseen becomes UNK (0)."""
        batch = len(quad_sequences)
        out = {f: np.zeros((batch, QUAD_LEN), dtype=np.int64) for f in QUAD_FIELDS}
        for b, quads in enumerate(quad_sequences):
            if len(quads) != QUAD_LEN:
                raise ValueError(f"quadruple sequence must have length {QUAD_LEN}")
            for pos_idx, quad in enumerate(quads):
                for field, value in zip(QUAD_FIELDS, quad):
                    out[field][b, pos_idx] = self._index[field].get(value, 0)
        return out

    def forward_logits(self, quad_sequences: list[list[Quadruple]]) -> ad.Tensor:
        idx = self.encode(quad_sequences)
        embs = ad.concat([
            self.pos_table(idx["pos"]),
            self.case_table(idx["case_status"]),
            self.stop_table(idx["is_stop"]),
            self.dep_table(idx["dep_type"]),
        ], axis=-1)  # (B, 4, E)
        x = ad.transpose(embs, (0, 2, 1))  # (B, E, 4)
        x = ad.maxpool1d(self.conv1(x), kernel=2)  # (B, C, 2)
        x = ad.maxpool1d(self.conv2(x), kernel=2)  # (B, C, 1)
        x = ad.transpose(x, (0, 2, 1))  # (B, 1, C)
        x = self.encoder(x)
        x = ad.reshape(x, (len(quad_sequences), self.dims["conv_channels"]))
        return self.fc2(ad.relu(self.fc1(x)))

    def probabilities(self, quad_sequences) -> np.ndarray:
        """(B, 2) array of (ill-formed, well-formed) probabilities."""
        return ad.softmax(self.forward_logits(quad_sequences), axis=-1).data

    def wellformedness_batch(self, quad_sequences) -> np.ndarray:
        probs = self.probabilities(quad_sequences)
        return probs[:, 1] - probs[:, 0]

    def forward_one(self, quads: list[Quadruple]) -> tuple[float, float]:
        probs = self.probabilities([quads])[0]
        return float(probs[0]), float(probs[1])

    # ------------------------------------------------------------------
    def header(self) -> dict:
        return {
            "kind": "identifier",
            "dims": dict(self.dims),
            "vocabs": {f: list(v) for f, v in self.vocabs.items()},
        }

    @classmethod
    def from_header(cls, header: dict) -> "IdentifierModel":
        return cls(vocabs=header["vocabs"], dims=header["dims"])
