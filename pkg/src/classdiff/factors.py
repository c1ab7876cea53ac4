"""Class-level difficulty factors, combined scores and reciprocal loss weights.

All four factors are scaled to [0, 1]:

* frequency: ``log(s_i) / max_j log(s_j)`` with ``s_i`` the class count;
* visual variation: largest cosine distance between a positive sample and
  the class centroid, divided by the largest such value over classes;
* semantic abstraction: concreteness rating of the class keyword over 5;
* co-occurrence: off-diagonal row sum of ``Y^T Y`` divided by ``s_i``,
  divided by its maximum over classes.

Factors should be computed on the training split only.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import class_counts
from .errors import (
    DegenerateMaxWarning,
    InvalidConfigError,
    MissingFactorError,
    NoPositivesError,
    ShapeMismatchError,
    ZeroCountError,
    ZeroVectorError,
)
from .lexicon import MAX_RATING, lookup

__all__ = [
    "FACTOR_NAMES",
    "DifficultyProfile",
    "FactorSelection",
    "combine_factors",
    "compute_cooccurrence",
    "compute_frequency",
    "compute_semantic_abstraction",
    "compute_visual_variation",
    "cooccurrence_matrix",
    "difficulty_profile",
    "loss_weights",
    "visual_variation_raw",
]

FACTOR_NAMES = ("frequency", "visual_variation", "semantic_abstraction", "cooccurrence")
_SHORT_NAMES = {
    "freq": "frequency",
    "visvar": "visual_variation",
    "abstr": "semantic_abstraction",
    "cooc": "cooccurrence",
}

SCORE_FLOOR = 1e-3
NORM_EPS = 1e-12
_DIST_EPS = 1e-12


def _normalize_by_max(values, factor):
    top = values.max()
    if top <= 0.0:
        warnings.warn(DegenerateMaxWarning(
            f"{factor}: maximum is zero, returning all zeros", factor=factor), stacklevel=3)
        return np.zeros_like(values, dtype=np.float64)
    return values / top


def _require_positive_counts(counts):
    counts = np.asarray(counts)
    missing = np.flatnonzero(counts < 1)
    if missing.size:
        raise ZeroCountError(f"classes {missing.tolist()} never occur")
    return counts


def compute_frequency(counts, base=None):
    """Log-count of each class relative to the most frequent class.

    ``base`` only exists to show the ratio does not depend on it; the
    natural log is used by default.
    """
    counts = _require_positive_counts(counts).astype(np.float64)
    logs = np.log(counts)
    if base is not None:
        logs = logs / np.log(base)
    return _normalize_by_max(logs, "frequency")


def _cosine_distances(rows, centroid):
    row_norms = np.linalg.norm(rows, axis=1)
    centroid_norm = np.linalg.norm(centroid)
    if centroid_norm < NORM_EPS or (row_norms < NORM_EPS).any():
        raise ZeroVectorError("cosine distance undefined for a zero-norm vector")
    dist = 1.0 - (rows @ centroid) / (row_norms * centroid_norm)
    dist[dist < _DIST_EPS] = 0.0
    return dist


def visual_variation_raw(labels, features):
    """Unnormalized visual variation: max cosine distance to the class centroid."""
    if features.n_samples != labels.n_samples:
        raise ShapeMismatchError(
            f"{features.n_samples} feature rows for {labels.n_samples} label rows")
    X = features.data
    raw = np.empty(labels.n_classes)
    for i in range(labels.n_classes):
        rows = X[labels.data[:, i] == 1]
        if rows.shape[0] == 0:
            raise NoPositivesError(f"class {labels.class_names[i]!r} has no positive samples")
        raw[i] = _cosine_distances(rows, rows.mean(axis=0)).max()
    return raw


def compute_visual_variation(labels, features):
    return _normalize_by_max(visual_variation_raw(labels, features), "visual_variation")


def compute_semantic_abstraction(class_names, lexicon):
    """Concreteness of each class keyword over 5, plus how it was matched."""
    values, kinds = [], []
    for name in class_names:
        rating, kind = lookup(lexicon, name)
        values.append(rating / MAX_RATING)
        kinds.append(kind)
    return np.array(values, dtype=np.float64), kinds


def cooccurrence_matrix(labels):
    """``C = Y^T Y`` with the diagonal set to zero."""
    Y = labels.data
    C = Y.T @ Y
    np.fill_diagonal(C, 0)
    return C


def compute_cooccurrence(labels):
    counts = _require_positive_counts(class_counts(labels))
    per_class = cooccurrence_matrix(labels).sum(axis=1) / counts
    return _normalize_by_max(per_class, "cooccurrence")


@dataclass(frozen=True)
class FactorSelection:
    frequency: bool = True
    visual_variation: bool = True
    semantic_abstraction: bool = True
    cooccurrence: bool = True

    @classmethod
    def parse(cls, text):
        """Build from a comma list such as ``"freq,cooc"`` (long names work too)."""
        chosen = set()
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            name = _SHORT_NAMES.get(token, token)
            if name not in FACTOR_NAMES:
                raise InvalidConfigError(f"unknown factor {token!r}")
            chosen.add(name)
        if not chosen:
            raise InvalidConfigError("no factor selected")
        return cls(**{name: name in chosen for name in FACTOR_NAMES})

    @classmethod
    def only(cls, *names):
        return cls(**{name: name in names for name in FACTOR_NAMES})

    @property
    def selected(self):
        return tuple(name for name in FACTOR_NAMES if getattr(self, name))


def combine_factors(factors, selection=FactorSelection()):
    """Sum the selected factors per class.

    ``factors`` maps factor name to a length-K vector (or ``None`` when the
    factor was not computed). Summation follows ``FACTOR_NAMES`` order.
    """
    chosen = selection.selected
    if not chosen:
        raise InvalidConfigError("no factor selected")
    total = None
    for name in chosen:
        values = factors.get(name)
        if values is None:
            raise MissingFactorError(f"factor {name!r} selected but not computed")
        values = np.asarray(values, dtype=np.float64)
        if total is not None and values.shape != total.shape:
            raise ShapeMismatchError(f"factor {name!r} has shape {values.shape}")
        total = values.copy() if total is None else total + values
    return total


def loss_weights(scores, normalization="mean_one"):
    """Reciprocal difficulty scores, floored at ``SCORE_FLOOR``.

    ``normalization="mean_one"`` rescales the weights to average exactly 1,
    ``"none"`` returns the plain reciprocals.
    """
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 1 or scores.size < 1:
        raise ShapeMismatchError("scores must be a non-empty vector")
    raw = 1.0 / np.maximum(scores, SCORE_FLOOR)
    if normalization in ("mean_one", "mean1"):
        return raw * (raw.size / raw.sum())
    if normalization == "none":
        return raw
    raise InvalidConfigError(f"unknown weight normalization {normalization!r}")


@dataclass(frozen=True, eq=False)
class DifficultyProfile:
    """Per-class factors, combined score and loss weight.

    Factors that were not computed are ``None``.
    """

    class_names: tuple
    counts: np.ndarray
    score: np.ndarray
    weight: np.ndarray
    frequency: np.ndarray = None
    visual_variation: np.ndarray = None
    semantic_abstraction: np.ndarray = None
    cooccurrence: np.ndarray = None
    match_kinds: tuple = None
    selection: FactorSelection = FactorSelection()
    normalization: str = "mean_one"
    warnings: list = field(default_factory=list)

    def factor_map(self):
        return {name: getattr(self, name) for name in FACTOR_NAMES}

    def records(self):
        rows = []
        for i, name in enumerate(self.class_names):
            row = {"name": name, "count": int(self.counts[i])}
            for factor in FACTOR_NAMES:
                values = getattr(self, factor)
                row[factor] = None if values is None else float(values[i])
            if self.match_kinds is not None:
                row["match_kind"] = self.match_kinds[i]
            row["score"] = float(self.score[i])
            row["weight"] = float(self.weight[i])
            rows.append(row)
        return rows


def difficulty_profile(labels, features=None, lexicon=None,
                       selection=FactorSelection(), normalization="mean_one"):
    """Compute the selected factors on ``labels`` and derive scores and weights.

    Degenerate-normalizer warnings raised along the way are collected on
    the returned profile as well as re-emitted.
    """
    chosen = selection.selected
    if "visual_variation" in chosen and features is None:
        raise MissingFactorError("visual variation needs a feature matrix")
    if "semantic_abstraction" in chosen and lexicon is None:
        raise MissingFactorError("semantic abstraction needs a lexicon")

    values = dict.fromkeys(FACTOR_NAMES)
    match_kinds = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        counts = class_counts(labels)
        if selection.frequency:
            values["frequency"] = compute_frequency(counts)
        if selection.visual_variation:
            values["visual_variation"] = compute_visual_variation(labels, features)
        if selection.semantic_abstraction:
            values["semantic_abstraction"], kinds = compute_semantic_abstraction(
                labels.class_names, lexicon)
            match_kinds = tuple(kinds)
        if selection.cooccurrence:
            values["cooccurrence"] = compute_cooccurrence(labels)
    recorded = []
    for item in caught:
        warnings.warn_explicit(item.message, item.category, item.filename, item.lineno)
        if isinstance(item.message, DegenerateMaxWarning):
            recorded.append(item.message.as_record())

    score = combine_factors(values, selection)
    return DifficultyProfile(
        class_names=labels.class_names,
        counts=counts,
        score=score,
        weight=loss_weights(score, normalization),
        match_kinds=match_kinds,
        selection=selection,
        normalization=normalization,
        warnings=recorded,
        **values,
    )
