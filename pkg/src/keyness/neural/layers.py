"""Trainable layers built on the autodiff Tensor."""

from __future__ import annotations

import numpy as np

from . import autodiff as ad
from .autodiff import Tensor


class Layer:
    """Base: layers expose named parameter tensors in a stable order."""

    def parameters(self) -> list[tuple[str, Tensor]]:
        out = []
        for attr, value in vars(self).items():
            if isinstance(value, Tensor) and value.requires_grad:
                out.append((attr, value))
            elif isinstance(value, Layer):
                out.extend((f"{attr}.{n}", p) for n, p in value.parameters())
            elif isinstance(value, (list, tuple)):
                for i, item in enumerate(value):
                    if isinstance(item, Layer):
                        out.extend((f"{attr}.{i}.{n}", p) for n, p in item.parameters())
        return out


def _param(rng: np.random.Generator, shape, scale: float) -> Tensor:
    return Tensor(rng.normal(0.0, scale, size=shape), requires_grad=True)


class Linear(Layer):
    def __init__(self, rng, dim_in: int, dim_out: int):
        self.weight = _param(rng, (dim_in, dim_out), scale=1.0 / np.sqrt(dim_in))
        self.bias = Tensor(np.zeros(dim_out), requires_grad=True)

    def __call__(self, x: Tensor) -> Tensor:
        return ad.matmul(x, self.weight) + self.bias


class EmbeddingTable(Layer):
    def __init__(self, rng, vocab_size: int, dim: int, init: str = "normal",
                 scale: float = 0.1):
        if init == "ones":
            # multiplicative-identity init: untrained rows modulate by ~1
            data = 1.0 + rng.normal(0.0, scale, size=(vocab_size, dim))
        else:
            data = rng.normal(0.0, scale, size=(vocab_size, dim))
        self.table = Tensor(data, requires_grad=True)

    def __call__(self, indices: np.ndarray) -> Tensor:
        return ad.embedding(self.table, indices)


class Conv1d(Layer):
    """Same-length 1-D convolution when padding='same' (odd kernels)."""

    def __init__(self, rng, c_in: int, c_out: int, kernel: int, padding: str = "same"):
        self.kernel = kernel
        self.padding = (kernel - 1) // 2 if padding == "same" else 0
        self.weight = _param(rng, (c_out, c_in, kernel), scale=1.0 / np.sqrt(c_in * kernel))
        self.bias = Tensor(np.zeros(c_out), requires_grad=True)

    def __call__(self, x: Tensor) -> Tensor:
        return ad.conv1d(x, self.weight, self.bias, padding=self.padding)


class LayerNorm(Layer):
    def __init__(self, dim: int):
        self.gamma = Tensor(np.ones(dim), requires_grad=True)
        self.beta = Tensor(np.zeros(dim), requires_grad=True)

    def __call__(self, x: Tensor) -> Tensor:
        return ad.layer_norm(x, self.gamma, self.beta)


class MultiHeadSelfAttention(Layer):
    def __init__(self, rng, dim: int, heads: int):
        if dim % heads != 0:
            raise ValueError(f"dim {dim} not divisible by heads {heads}")
        self.dim = dim
        self.heads = heads
        self.head_dim = dim // heads
        self.wq = Linear(rng, dim, dim)
        self.wk = Linear(rng, dim, dim)
        self.wv = Linear(rng, dim, dim)
        self.wo = Linear(rng, dim, dim)

    def _split(self, x: Tensor, batch: int, seq: int) -> Tensor:
        x = ad.reshape(x, (batch, seq, self.heads, self.head_dim))
        return ad.transpose(x, (0, 2, 1, 3))  # (B, H, S, dh)

    def __call__(self, x: Tensor) -> Tensor:
        batch, seq, _ = x.shape
        q = self._split(self.wq(x), batch, seq)
        k = self._split(self.wk(x), batch, seq)
        v = self._split(self.wv(x), batch, seq)
        scores = ad.matmul(q, ad.transpose(k, (0, 1, 3, 2))) * (1.0 / np.sqrt(self.head_dim))
        attn = ad.softmax(scores, axis=-1)
        ctx = ad.matmul(attn, v)  # (B, H, S, dh)
        ctx = ad.transpose(ctx, (0, 2, 1, 3))
        ctx = ad.reshape(ctx, (batch, seq, self.dim))
        return self.wo(ctx)


class TransformerEncoderLayer(Layer):
    """Post-norm encoder block: self-attention and a two-layer feed-forward,
    each wrapped with a residual connection and layer norm."""

    def __init__(self, rng, dim: int, heads: int, ff_dim: int):
        self.attention = MultiHeadSelfAttention(rng, dim, heads)
        self.norm1 = LayerNorm(dim)
        self.ff1 = Linear(rng, dim, ff_dim)
        self.ff2 = Linear(rng, ff_dim, dim)
        self.norm2 = LayerNorm(dim)

    def __call__(self, x: Tensor) -> Tensor:
        x = self.norm1(x + self.attention(x))
        return self.norm2(x + self.ff2(ad.relu(self.ff1(x))))


def sinusoidal_positions(seq_len: int, dim: int) -> np.ndarray:
    """Fixed sine/cosine positional encodings (not trained)."""
    positions = np.arange(seq_len)[:, None].astype(np.float64)
    idx = np.arange(dim)[None, :]
    angles = positions / np.power(10000.0, (2 * (idx // 2)) / dim)
    enc = np.zeros((seq_len, dim))
    enc[:, 0::2] = np.sin(angles[:, 0::2])
    enc[:, 1::2] = np.cos(angles[:, 1::2])
    return enc
