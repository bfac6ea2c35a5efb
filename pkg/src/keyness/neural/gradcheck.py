"""Analytic-vs-numeric gradient verification via central finite differences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .train import zero_grads


@dataclass
class GradCheckRow:
    tensor: str
    entries_checked: int
    max_relative_error: float

    def passed(self, tolerance: float) -> bool:
        return self.max_relative_error < tolerance


def _relative_error(analytic: float, numeric: float) -> float:
    # the floor keeps finite-difference noise on structurally-zero gradients
    # (e.g. attention key bias, which softmax shift-invariance cancels) from
    # registering as relative error
    scale = max(abs(analytic), abs(numeric), 1e-5)
    return abs(analytic - numeric) / scale


def gradient_check(named_params, loss_fn, h: float = 1e-5,
                   max_entries: int = 25, seed: int = 0) -> list[GradCheckRow]:
    """Compare analytic gradients of loss_fn() against central differences.

    loss_fn must rebuild the forward graph on every call (parameters are
    perturbed in place between calls).  For tensors larger than max_entries,
    a seeded random subset of entries is checked.
    """
    rng = np.random.default_rng(seed)
    zero_grads(named_params)
    loss = loss_fn()
    loss.backward()
    analytic = {name: (p.grad.copy() if p.grad is not None else np.zeros_like(p.data))
                for name, p in named_params}

    rows = []
    for name, p in named_params:
        flat = p.data.reshape(-1)
        n = flat.size
        if n <= max_entries:
            entries = np.arange(n)
        else:
            entries = rng.choice(n, size=max_entries, replace=False)
        worst = 0.0
        for idx in entries:
            original = flat[idx]
            flat[idx] = original + h
            up = loss_fn().item()
            flat[idx] = original - h
            down = loss_fn().item()
            flat[idx] = original
            numeric = (up - down) / (2.0 * h)
            err = _relative_error(analytic[name].reshape(-1)[idx], numeric)
            worst = max(worst, err)
        rows.append(GradCheckRow(tensor=name, entries_checked=len(entries),
                                 max_relative_error=worst))
    return rows


def report_max(rows: list[GradCheckRow]) -> float:
    return max((r.max_relative_error for r in rows), default=0.0)


def standard_checks(seed: int = 0):
    """Named (params, loss_fn) pairs covering every layer type and both full
    networks, on small seeded inputs.  Input tensors are included in the
    checked parameter lists so input gradients are verified too."""
    from . import autodiff as ad
    from .autodiff import Tensor
    from .identifier import IdentifierModel, build_quad_vocabs
    from .layers import (Conv1d, EmbeddingTable, LayerNorm, Linear,
                         MultiHeadSelfAttention, TransformerEncoderLayer)
    from .ranker import RankerModel
    from ..candidates import PAD_QUAD, Quadruple
    from ..features import N_DEPENDENT, KeynessPattern

    rng = np.random.default_rng(seed)

    def weighted_sum(out):
        weights = Tensor(np.random.default_rng(seed + 1).normal(size=out.shape))
        return ad.tsum(out * weights)

    checks = []

    x_lin = Tensor(rng.normal(size=(3, 5)), requires_grad=True)
    linear = Linear(rng, 5, 4)
    checks.append(("linear", linear.parameters() + [("input", x_lin)],
                   lambda: weighted_sum(linear(x_lin))))

    table = EmbeddingTable(rng, 7, 4)
    idx = rng.integers(0, 7, size=(3, 2))
    checks.append(("embedding", table.parameters(),
                   lambda: weighted_sum(table(idx))))

    x_conv = Tensor(rng.normal(size=(2, 3, 9)), requires_grad=True)
    conv = Conv1d(rng, 3, 5, kernel=3)
    checks.append(("conv1d", conv.parameters() + [("input", x_conv)],
                   lambda: weighted_sum(conv(x_conv))))

    x_pool = Tensor(rng.normal(size=(2, 3, 8)), requires_grad=True)
    checks.append(("maxpool1d", [("input", x_pool)],
                   lambda: weighted_sum(ad.maxpool1d(x_pool, kernel=2))))

    x_ln = Tensor(rng.normal(size=(4, 6)), requires_grad=True)
    norm = LayerNorm(6)
    checks.append(("layer_norm", norm.parameters() + [("input", x_ln)],
                   lambda: weighted_sum(norm(x_ln))))

    x_attn = Tensor(rng.normal(size=(2, 5, 8)), requires_grad=True)
    attention = MultiHeadSelfAttention(rng, 8, 2)
    checks.append(("attention", attention.parameters() + [("input", x_attn)],
                   lambda: weighted_sum(attention(x_attn))))

    x_enc = Tensor(rng.normal(size=(2, 5, 8)), requires_grad=True)
    encoder = TransformerEncoderLayer(rng, 8, 2, 16)
    checks.append(("transformer_encoder", encoder.parameters() + [("input", x_enc)],
                   lambda: weighted_sum(encoder(x_enc))))

    x_sm = Tensor(rng.normal(size=(3, 6)), requires_grad=True)
    checks.append(("softmax", [("input", x_sm)],
                   lambda: weighted_sum(ad.softmax(x_sm, axis=-1))))

    quads = [
        [Quadruple("NNP", "UPPER-CASE", "NOT-STOP", "amod"),
         Quadruple("NN", "LOWER-CASE", "NOT-STOP", "compound"),
         Quadruple("NN", "LOWER-CASE", "NOT-STOP", "nsubj"), PAD_QUAD],
        [Quadruple("DT", "LOWER-CASE", "IS-STOP", "det"),
         Quadruple("NN", "LOWER-CASE", "NOT-STOP", "obj"), PAD_QUAD, PAD_QUAD],
        [PAD_QUAD] * 4,
    ]
    identifier = IdentifierModel(
        build_quad_vocabs(quads),
        dims={"pos_dim": 5, "case_dim": 3, "stop_dim": 3, "dep_dim": 5,
              "conv_channels": 8, "heads": 2, "ff_dim": 12},
        seed=seed)
    id_labels = np.array([1, 0, 0])
    checks.append(("identifier_network", identifier.parameters(),
                   lambda: ad.cross_entropy(identifier.forward_logits(quads), id_labels)))

    patterns = [KeynessPattern("misc-news", 1 + int(rng.integers(0, 4)),
                               rng.uniform(0.0, 2.0, N_DEPENDENT))
                for _ in range(3)]
    ranker = RankerModel(["misc-news", "science"],
                         dims={"model_dim": 8, "heads": 2, "ff_dim": 12,
                               "conv_channels": 6},
                         seed=seed)
    rk_labels = np.array([1, 0, 1])
    checks.append(("ranker_network", ranker.parameters(),
                   lambda: ad.cross_entropy(ranker.forward_logits(patterns), rk_labels)))
    return checks


def run_standard_checks(step: float = 1e-5, max_entries: int = 10,
                        seed: int = 0) -> list[dict]:
    """Gradient-check every layer type and both networks; one row per target."""
    out = []
    for name, params, loss_fn in standard_checks(seed=seed):
        rows = gradient_check(params, loss_fn, h=step, max_entries=max_entries,
                              seed=seed)
        out.append({
            "target": name,
            "tensors": len(rows),
            "max_relative_error": report_max(rows),
        })
    return out
