"""Immutable label and feature containers shared by every module."""

from dataclasses import dataclass

import numpy as np

from .errors import DifficultyError, NonFiniteValueError, ShapeMismatchError
from .lexicon import normalize_term

__all__ = ["FeatureMatrix", "LabelMatrix", "class_counts"]


def _frozen(array):
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LabelMatrix:
    """Binary ground truth ``Y``: one row per sample, one column per class.

    Class identity is the column index; ``class_names`` is metadata.
    """

    data: np.ndarray
    class_names: tuple

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ShapeMismatchError(f"label matrix must be 2-D, got shape {data.shape}")
        n, k = data.shape
        if n < 1 or k < 1:
            raise ShapeMismatchError(f"label matrix needs at least one row and column, got {data.shape}")
        if not np.isin(data, (0, 1)).all():
            raise DifficultyError("label matrix entries must be exactly 0 or 1")
        names = tuple(str(name) for name in self.class_names)
        if len(names) != k:
            raise ShapeMismatchError(f"{len(names)} class names for {k} columns")
        normalized = [normalize_term(name) for name in names]
        if len(set(normalized)) != k:
            raise DifficultyError("class names are not unique after normalization")
        object.__setattr__(self, "data", _frozen(data.astype(np.int64)))
        object.__setattr__(self, "class_names", names)

    @classmethod
    def from_array(cls, data, class_names=None):
        data = np.asarray(data)
        if class_names is None:
            class_names = [f"class{i:02d}" for i in range(data.shape[-1])]
        return cls(data, tuple(class_names))

    @property
    def n_samples(self):
        return self.data.shape[0]

    @property
    def n_classes(self):
        return self.data.shape[1]

    def take(self, rows):
        """Row subset (e.g. a train or test split)."""
        return LabelMatrix(self.data[np.asarray(rows)], self.class_names)


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Real-valued per-sample descriptors, one row per sample."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ShapeMismatchError(f"feature matrix must be 2-D, got shape {data.shape}")
        if not np.isfinite(data).all():
            raise NonFiniteValueError("feature matrix contains NaN or infinite values")
        object.__setattr__(self, "data", _frozen(data))

    @property
    def n_samples(self):
        return self.data.shape[0]

    @property
    def dim(self):
        return self.data.shape[1]

    def take(self, rows):
        return FeatureMatrix(self.data[np.asarray(rows)])


def class_counts(labels):
    """Number of positive samples per class (column sums of ``Y``)."""
    return labels.data.sum(axis=0)
