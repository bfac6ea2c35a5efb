"""Plain stochastic gradient descent on the two-way cross-entropy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import TrainingError
from . import autodiff as ad


@dataclass
class TrainingConfig:
    epochs: int = 20
    batch_size: int = 56
    learning_rate: float = 1.0
    epsilon: float = 0.5      # identifier keyness filter
    theta: float = 3.35       # ranker unlabelled sampling ratio
    seed: int = 0
    sampling_seed: int | None = None  # bootstrap-sampling stream; defaults to seed
    optimizer: str = "sgd"
    refresh_every: int = 5
    clip_norm: float | None = 0.25  # global gradient-norm clip; None disables
    model_dims: dict = field(default_factory=dict)

    @property
    def effective_sampling_seed(self) -> int:
        return self.seed if self.sampling_seed is None else self.sampling_seed

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must be in (0, 1]")
        if self.theta <= 0.0:
            raise ValueError("theta must be > 0")
        if self.optimizer != "sgd":
            raise ValueError(f"unsupported optimizer {self.optimizer!r}")


def zero_grads(params) -> None:
    for _name, p in params:
        p.grad = None


def clip_gradients(params, max_norm: float) -> None:
    total = 0.0
    for _name, p in params:
        if p.grad is not None:
            total += float((p.grad ** 2).sum())
    norm = np.sqrt(total)
    if norm > max_norm:
        scale = max_norm / norm
        for _name, p in params:
            if p.grad is not None:
                p.grad *= scale


def sgd_step(params, learning_rate: float) -> None:
    for _name, p in params:
        if p.grad is not None:
            p.data = p.data - learning_rate * p.grad


def train_step(model, inputs, labels, learning_rate: float,
               batch_id: str = "?", clip_norm: float | None = 0.25) -> float:
    """One SGD update on a batch; returns the (mean) loss.

    `model` must expose forward_logits(inputs) and parameters().
    """
    params = model.parameters()
    zero_grads(params)
    loss = ad.cross_entropy(model.forward_logits(inputs), np.asarray(labels))
    value = loss.item()
    if not np.isfinite(value):
        raise TrainingError(f"non-finite loss on batch {batch_id}")
    loss.backward()
    if clip_norm is not None:
        clip_gradients(params, clip_norm)
    sgd_step(params, learning_rate)
    return value


def batch_indices(count: int, batch_size: int, rng: np.random.Generator):
    """Deterministically shuffled batch index lists."""
    order = rng.permutation(count)
    for start in range(0, count, batch_size):
        yield order[start:start + batch_size]
