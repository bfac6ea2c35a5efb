"""Candidate ranking network.

The document's sublanguage and the term's length are embedded as 17-wide
modulation vectors multiplied elementwise into the dependent-feature vector,
which is then lifted to a 17-position sequence, positionally encoded, passed
through two transformer encoder layers and a three-stage conv/pool stack, and
read out as a two-way softmax (negative keyness, positive keyness).  The
final keyness score is r = P - N.

Per-feature min-max statistics computed on training data travel with the
model and are applied identically at training and inference time.
"""

from __future__ import annotations

import numpy as np

from ..errors import FeatureError
from ..features import FEATURE_ORDER, N_DEPENDENT, KeynessPattern
from . import autodiff as ad
from .autodiff import Tensor
from .layers import (Conv1d, EmbeddingTable, Layer, Linear,
                     TransformerEncoderLayer, sinusoidal_positions)

MAX_TERM_LENGTH = 4

DEFAULT_DIMS = {
    "model_dim": 32,
    "heads": 4,
    "ff_dim": 64,
    "conv_channels": 32,
    "kernel": 3,
    "pool": 2,
}


class RankerModel(Layer):
    def __init__(self, sublanguages: list[str], dims: dict | None = None,
                 seed: int = 0, norm_lo: np.ndarray | None = None,
                 norm_hi: np.ndarray | None = None):
        vocab = ["unknown"] + sorted(s for s in set(sublanguages) if s != "unknown")
        self.sublanguages = vocab
        self._subl_index = {s: i for i, s in enumerate(vocab)}
        self.dims = dict(DEFAULT_DIMS, **(dims or {}))
        d = self.dims["model_dim"]
        rng = np.random.default_rng(seed)
        # modulation tables start near the multiplicative identity so that an
        # untrained (zero-shot) sublanguage row passes features through intact
        self.subl_table = EmbeddingTable(rng, len(vocab), N_DEPENDENT, init="ones", scale=0.05)
        self.len_table = EmbeddingTable(rng, MAX_TERM_LENGTH, N_DEPENDENT, init="ones", scale=0.05)
        self.lift_w = Tensor(rng.normal(0.0, 0.5, size=(N_DEPENDENT, d)), requires_grad=True)
        self.lift_b = Tensor(np.zeros((N_DEPENDENT, d)), requires_grad=True)
        self.positions = sinusoidal_positions(N_DEPENDENT, d)
        self.encoders = [
            TransformerEncoderLayer(rng, d, self.dims["heads"], self.dims["ff_dim"])
            for _ in range(2)
        ]
        channels = self.dims["conv_channels"]
        kernel = self.dims["kernel"]
        self.convs = [
            Conv1d(rng, d, channels, kernel=kernel),
            Conv1d(rng, channels, channels, kernel=kernel),
            Conv1d(rng, channels, channels, kernel=kernel),
        ]
        length = N_DEPENDENT
        for _ in self.convs:
            length = (length - self.dims["pool"]) // self.dims["pool"] + 1
        self.out = Linear(rng, channels * length, 2)
        self._flat_dim = channels * length
        self.norm_lo = np.zeros(N_DEPENDENT) if norm_lo is None else np.asarray(norm_lo, dtype=np.float64)
        self.norm_hi = np.ones(N_DEPENDENT) if norm_hi is None else np.asarray(norm_hi, dtype=np.float64)

    # ------------------------------------------------------------------
    def fit_normalization(self, patterns: list[KeynessPattern]) -> None:
        matrix = np.vstack([p.dependent for p in patterns])
        self.norm_lo = matrix.min(axis=0)
        self.norm_hi = matrix.max(axis=0)

    def _normalize(self, matrix: np.ndarray) -> np.ndarray:
        span = self.norm_hi - self.norm_lo
        out = np.empty_like(matrix)
        flat = span == 0.0
        out[:, flat] = 0.5
        nz = ~flat
        out[:, nz] = np.clip((matrix[:, nz] - self.norm_lo[nz]) / span[nz], 0.0, 1.0)
        return out

    def encode(self, patterns: list[KeynessPattern]):
        subl_idx = np.array([self._subl_index.get(p.sublanguage, 0) for p in patterns],
                            dtype=np.int64)
        len_idx = np.array([p.length - 1 for p in patterns], dtype=np.int64)
        if np.any(len_idx < 0) or np.any(len_idx >= MAX_TERM_LENGTH):
            raise ValueError("pattern length out of range 1..4")
        matrix = np.vstack([p.dependent for p in patterns])
        bad = ~np.isfinite(matrix)
        if bad.any():
            feature = FEATURE_ORDER[int(np.argmax(bad.any(axis=0)))]
            raise FeatureError(feature, "non-finite value in pattern batch")
        return subl_idx, len_idx, self._normalize(matrix)

    def forward_logits(self, patterns: list[KeynessPattern]) -> Tensor:
        subl_idx, len_idx, matrix = self.encode(patterns)
        batch = len(patterns)
        modulated = self.subl_table(subl_idx) * self.len_table(len_idx) * Tensor(matrix)
        x = ad.reshape(modulated, (batch, N_DEPENDENT, 1)) * self.lift_w + self.lift_b
        x = x + Tensor(self.positions)
        for encoder in self.encoders:
            x = encoder(x)
        x = ad.transpose(x, (0, 2, 1))  # (B, d, 17)
        pool = self.dims["pool"]
        for conv in self.convs:
            x = ad.maxpool1d(conv(x), kernel=pool)
        x = ad.reshape(x, (batch, self._flat_dim))
        return self.out(x)

    def probabilities(self, patterns) -> np.ndarray:
        """(B, 2) array of (negative, positive) keyness probabilities."""
        return ad.softmax(self.forward_logits(patterns), axis=-1).data

    def keyness_batch(self, patterns) -> np.ndarray:
        probs = self.probabilities(patterns)
        return probs[:, 1] - probs[:, 0]

    def forward_one(self, pattern: KeynessPattern) -> tuple[float, float, float]:
        probs = self.probabilities([pattern])[0]
        return float(probs[0]), float(probs[1]), float(probs[1] - probs[0])

    # ------------------------------------------------------------------
    def header(self) -> dict:
        return {
            "kind": "ranker",
            "dims": dict(self.dims),
            "sublanguages": list(self.sublanguages),
            "norm_lo": self.norm_lo.tolist(),
            "norm_hi": self.norm_hi.tolist(),
        }

    @classmethod
    def from_header(cls, header: dict) -> "RankerModel":
        return cls(sublanguages=header["sublanguages"], dims=header["dims"],
                   norm_lo=np.array(header["norm_lo"]),
                   norm_hi=np.array(header["norm_hi"]))
