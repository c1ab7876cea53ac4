"""Seeded synthetic multi-label datasets with controllable difficulty structure.

Generation order (all draws from one :class:`~classdiff.rng.Xoshiro256`
stream seeded with ``config.seed``):

1. class centroids, class by class: ``feature_dim`` normals each, scaled to
   unit length;
2. per sample, in order:

   a. one uniform picks the primary class from the prior
      ``p_c ∝ (c + 1) ** -freq_exponent`` by inverse CDF;
   b. one uniform per other member of the primary's group (ascending class
      index) activates that member when below ``group_p``;
   c. for each active class (ascending) ``feature_dim`` normals ``z_c``;
      the feature is ``sum_c (centroid_c + spread_c * z_c)`` scaled to unit
      length;
   d. only if ``label_noise > 0``: one uniform per class, flipping that
      label when below ``label_noise``. Features are not recomputed, so
      flips act as annotation noise.

3. a class left without positives gets one injected at sample index
   ``c * (n_samples // n_classes)``.
"""

import json
from dataclasses import asdict, dataclass

import numpy as np

from .core import FeatureMatrix, LabelMatrix
from .errors import InvalidConfigError
from .rng import Xoshiro256

__all__ = ["SynthConfig", "class_name", "generate", "train_test_split"]


def class_name(index):
    return f"class{index:02d}"


@dataclass(frozen=True)
class SynthConfig:
    n_classes: int
    n_samples: int
    feature_dim: int
    freq_exponent: float = 0.0
    spread: tuple = None
    cooc_groups: tuple = None
    group_p: float = 0.0
    label_noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.spread is None:
            object.__setattr__(self, "spread", (0.5,) * int(self.n_classes))
        elif np.isscalar(self.spread):
            object.__setattr__(self, "spread", (float(self.spread),) * int(self.n_classes))
        else:
            object.__setattr__(self, "spread", tuple(float(s) for s in self.spread))
        if self.cooc_groups is None:
            groups = tuple((c,) for c in range(int(self.n_classes)))
        else:
            groups = tuple(tuple(int(c) for c in g) for g in self.cooc_groups)
        object.__setattr__(self, "cooc_groups", groups)
        self.validate()

    def validate(self):
        k = self.n_classes
        if k < 1 or self.feature_dim < 1:
            raise InvalidConfigError("n_classes and feature_dim must be positive")
        if self.n_samples < k:
            raise InvalidConfigError("n_samples must be at least n_classes")
        if self.freq_exponent < 0:
            raise InvalidConfigError("freq_exponent must be non-negative")
        if len(self.spread) != k or any(not s >= 0 for s in self.spread):
            raise InvalidConfigError(f"spread needs {k} non-negative values")
        members = sorted(c for g in self.cooc_groups for c in g)
        if members != list(range(k)):
            raise InvalidConfigError("cooc_groups must partition the classes exactly once")
        for name in ("group_p", "label_noise"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidConfigError(f"{name} must lie in [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfigError("seed must be an unsigned 64-bit integer")

    @classmethod
    def from_dict(cls, data):
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InvalidConfigError(f"unknown synth config fields: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidConfigError(f"bad JSON: {exc}") from None

    def to_dict(self):
        d = asdict(self)
        d["spread"] = list(self.spread)
        d["cooc_groups"] = [list(g) for g in self.cooc_groups]
        return d


def _unit(v):
    norm = np.linalg.norm(v)
    return v / norm if norm > 0 else v


def generate(config):
    """Build ``(labels, features, class_names)`` from ``config``."""
    k, n, d = config.n_classes, config.n_samples, config.feature_dim
    rng = Xoshiro256(config.seed)
    centroids = np.array([_unit(rng.normals(d)) for _ in range(k)])

    prior = np.arange(1, k + 1, dtype=np.float64) ** -config.freq_exponent
    cdf = np.cumsum(prior / prior.sum())
    group_of = {c: g for g in config.cooc_groups for c in g}
    spread = np.array(config.spread)

    Y = np.zeros((n, k), dtype=np.int64)
    X = np.zeros((n, d))
    for row in range(n):
        primary = min(int(np.searchsorted(cdf, rng.uniform(), side="right")), k - 1)
        active = [primary]
        for other in sorted(group_of[primary]):
            if other != primary and rng.uniform() < config.group_p:
                active.append(other)
        active.sort()
        x = np.zeros(d)
        for c in active:
            x += centroids[c] + spread[c] * rng.normals(d)
        X[row] = _unit(x)
        Y[row, active] = 1
        if config.label_noise > 0:
            flips = rng.uniforms(k) < config.label_noise
            Y[row, flips] ^= 1

    stride = n // k
    for c in np.flatnonzero(Y.sum(axis=0) == 0):
        Y[c * stride, c] = 1

    names = tuple(class_name(c) for c in range(k))
    return LabelMatrix(Y, names), FeatureMatrix(X), names


def train_test_split(labels, features, test_fraction):
    """Contiguous split: the first rows train, the last ``test_fraction`` test."""
    n = labels.n_samples
    n_test = int(round(n * test_fraction))
    if not 0 < n_test < n:
        raise InvalidConfigError(f"test_fraction {test_fraction} leaves an empty split")
    train, test = np.arange(n - n_test), np.arange(n - n_test, n)
    return (labels.take(train), features.take(train)), (labels.take(test), features.take(test))
