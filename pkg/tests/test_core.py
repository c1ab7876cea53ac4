import numpy as np
import pytest

from classdiff import FeatureMatrix, LabelMatrix, class_counts
from classdiff.errors import DifficultyError, NonFiniteValueError, ShapeMismatchError

from conftest import random_labels


@pytest.mark.parametrize("Y, expected", [
    ([[1, 1], [1, 0]], [2, 1]),
    ([[0, 0, 0]], [0, 0, 0]),
    (np.eye(3, dtype=int), [1, 1, 1]),
])
def test_class_counts(Y, expected):
    assert class_counts(LabelMatrix.from_array(Y)).tolist() == expected


def test_counts_permutation_equivariant(rng):
    labels = random_labels(rng, 30, 6)
    counts = class_counts(labels)
    rows = rng.permutation(30)
    cols = rng.permutation(6)
    assert (class_counts(LabelMatrix.from_array(labels.data[rows])) == counts).all()
    assert (class_counts(LabelMatrix.from_array(labels.data[:, cols])) == counts[cols]).all()
    assert counts.sum() == labels.data.sum()


def test_label_matrix_rejects_non_binary():
    with pytest.raises(DifficultyError):
        LabelMatrix.from_array([[0, 2]])


def test_label_matrix_rejects_bad_names():
    with pytest.raises(ShapeMismatchError):
        LabelMatrix(np.zeros((2, 2), int), ("a",))
    with pytest.raises(DifficultyError):
        LabelMatrix(np.zeros((2, 2), int), ("Walk", "walks"))


def test_label_matrix_rejects_empty():
    with pytest.raises(ShapeMismatchError):
        LabelMatrix.from_array(np.zeros((0, 3), int))


def test_label_matrix_is_read_only():
    labels = LabelMatrix.from_array([[1, 0]])
    with pytest.raises(ValueError):
        labels.data[0, 0] = 0


def test_feature_matrix_rejects_nan():
    with pytest.raises(NonFiniteValueError):
        FeatureMatrix(np.array([[1.0, np.nan]]))


def test_take_keeps_names():
    labels = LabelMatrix(np.array([[1, 0], [0, 1], [1, 1]]), ("a", "b"))
    sub = labels.take([2, 0])
    assert sub.class_names == ("a", "b")
    assert sub.data.tolist() == [[1, 1], [1, 0]]
