"""Sigmoid linear multi-label classifier trained with weighted BCE and momentum SGD.

The loss for one sample is ``-sum_j w_j [S_j log p_j + (1 - S_j) log(1 - p_j)]``
with ``p = sigmoid(W x + b)``; a batch loss is the mean over its samples.
With all ``w_j = 1`` this is the plain binary cross entropy.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError, ShapeMismatchError
from .rng import Xoshiro256

__all__ = [
    "LinearModel",
    "TrainConfig",
    "forward",
    "gradient",
    "init_model",
    "sigmoid",
    "train",
    "weighted_bce",
]

CLAMP = 1e-7
INIT_SCALE = 0.01


@dataclass(frozen=True, eq=False)
class LinearModel:
    W: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64)
        b = np.array(self.b, dtype=np.float64)
        if W.ndim != 2 or b.shape != (W.shape[0],):
            raise ShapeMismatchError(f"W {W.shape} and b {b.shape} do not match")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "b", b)

    @property
    def n_classes(self):
        return self.W.shape[0]

    @property
    def dim(self):
        return self.W.shape[1]

    def predict(self, X):
        return forward(self, X)


@dataclass(frozen=True)
class TrainConfig:
    iterations: int
    learning_rate: float = 0.001
    momentum: float = 0.9
    batch_size: int = 28
    seed: int = 0
    class_weights: tuple = None

    def __post_init__(self):
        if self.iterations < 0:
            raise InvalidConfigError("iterations must be non-negative")
        if not self.learning_rate > 0:
            raise InvalidConfigError("learning_rate must be positive")
        if not 0 <= self.momentum < 1:
            raise InvalidConfigError("momentum must lie in [0, 1)")
        if self.batch_size < 1:
            raise InvalidConfigError("batch_size must be positive")
        if self.class_weights is not None:
            weights = tuple(float(w) for w in self.class_weights)
            if any(not w >= 0 for w in weights):
                raise InvalidConfigError("class weights must be non-negative")
            object.__setattr__(self, "class_weights", weights)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
            return cls(**data)
        except (json.JSONDecodeError, TypeError) as exc:
            raise InvalidConfigError(f"bad train config: {exc}") from None


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def forward(model, x):
    """Class probabilities for one sample (``d``) or a batch (``n x d``)."""
    x = np.asarray(x, dtype=np.float64)
    return sigmoid(x @ model.W.T + model.b)


def weighted_bce(predictions, targets, weights=None):
    """Class-weighted BCE summed over classes; batches are averaged over rows."""
    p = np.clip(np.asarray(predictions, dtype=np.float64), CLAMP, 1.0 - CLAMP)
    s = np.asarray(targets, dtype=np.float64)
    w = np.ones(p.shape[-1]) if weights is None else np.asarray(weights, dtype=np.float64)
    per_class = -(s * np.log(p) + (1.0 - s) * np.log(1.0 - p))
    per_sample = (per_class * w).sum(axis=-1)
    return float(np.mean(per_sample))


def gradient(model, X, S, weights=None):
    """Batch-mean gradient of :func:`weighted_bce` w.r.t. ``W`` and ``b``."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    S = np.atleast_2d(np.asarray(S, dtype=np.float64))
    if X.shape[0] == 0:
        raise ShapeMismatchError("empty batch")
    w = np.ones(model.n_classes) if weights is None else np.asarray(weights, dtype=np.float64)
    delta = (forward(model, X) - S) * w
    n = X.shape[0]
    return delta.T @ X / n, delta.sum(axis=0) / n


def init_model(n_classes, dim, rng):
    """Uniform(-0.01, 0.01) entries: ``W`` row-major first, then ``b``."""
    W = -INIT_SCALE + 2 * INIT_SCALE * rng.uniforms(n_classes * dim)
    b = -INIT_SCALE + 2 * INIT_SCALE * rng.uniforms(n_classes)
    return LinearModel(W.reshape(n_classes, dim), b)


def _batches(n, batch_size, rng):
    size = min(batch_size, n)
    while True:
        perm = rng.permutation(n)
        for start in range(0, n - size + 1, size):
            yield perm[start:start + size]


def train(labels, features, config):
    """Momentum SGD (``v = mu v + g``; ``theta -= lr v``) from a seeded start.

    Each epoch draws a fresh permutation and walks it in full batches; a short
    tail is dropped. Returns the model and the batch loss before each update.
    """
    if labels.n_samples != features.n_samples:
        raise ShapeMismatchError(
            f"{labels.n_samples} label rows vs {features.n_samples} feature rows")
    k = labels.n_classes
    weights = np.ones(k) if config.class_weights is None else np.array(config.class_weights)
    if weights.shape != (k,):
        raise ShapeMismatchError(f"{weights.size} class weights for {k} classes")

    rng = Xoshiro256(config.seed)
    model = init_model(k, features.dim, rng)
    W, b = model.W.copy(), model.b.copy()
    vW, vb = np.zeros_like(W), np.zeros_like(b)
    X, Y = features.data, labels.data.astype(np.float64)
    trace = np.empty(config.iterations)
    batches = _batches(labels.n_samples, config.batch_size, rng)
    for it in range(config.iterations):
        rows = next(batches)
        xb, yb = X[rows], Y[rows]
        delta = sigmoid(xb @ W.T + b)
        trace[it] = weighted_bce(delta, yb, weights)
        delta = (delta - yb) * weights
        gW, gb = delta.T @ xb / rows.size, delta.sum(axis=0) / rows.size
        vW = config.momentum * vW + gW
        vb = config.momentum * vb + gb
        W -= config.learning_rate * vW
        b -= config.learning_rate * vb
    return LinearModel(W, b), trace
