import math

import numpy as np
import pytest

from classdiff import LabelMatrix
from classdiff.errors import (
    EmptyError,
    ExcludedClassWarning,
    LengthMismatchError,
    NoPositivesError,
    OneClassOnlyError,
    ShapeMismatchError,
    ZeroVarianceError,
)
from classdiff.metrics import average_precision, boxplot_stats, evaluate, pearson, roc_auc

import oracles


class TestAveragePrecision:
    def test_rank_walk(self):
        assert average_precision([0.9, 0.8, 0.7, 0.6], [1, 0, 1, 0]) == pytest.approx(5 / 6, abs=1e-15)

    def test_all_positive(self):
        assert average_precision([0.3, 0.1, 0.2], [1, 1, 1]) == 1.0

    def test_positive_second(self):
        assert average_precision([0.1, 0.9], [1, 0]) == 0.5

    def test_ties_keep_index_order(self):
        assert average_precision([0.5, 0.5], [0, 1]) == 0.5
        assert average_precision([0.5, 0.5], [1, 0]) == 1.0

    def test_no_positives(self):
        with pytest.raises(NoPositivesError):
            average_precision([0.1, 0.2], [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            average_precision([0.1], [0, 1])

    def test_monotone_transform_invariant(self, rng):
        for _ in range(50):
            scores = rng.normal(size=60)
            labels = rng.random(60) < 0.3
            labels[0] = True
            assert average_precision(scores, labels) == average_precision(np.exp(3 * scores), labels)

    def test_matches_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 201))
            scores = rng.integers(0, 20, size=n) / 4.0
            labels = (rng.random(n) < 0.3).astype(int)
            labels[rng.integers(n)] = 1
            assert average_precision(scores, labels) == oracles.average_precision(scores.tolist(), labels.tolist())


class TestRocAuc:
    def test_perfect(self):
        assert roc_auc([0.9, 0.1], [1, 0]) == 1.0

    def test_all_tied(self):
        assert roc_auc([0.3] * 5, [1, 0, 1, 0, 0]) == 0.5

    def test_pairwise(self):
        assert roc_auc([0.8, 0.6, 0.4, 0.2], [1, 0, 1, 0]) == 0.75

    def test_one_class(self):
        with pytest.raises(OneClassOnlyError):
            roc_auc([0.1, 0.2], [1, 1])

    def test_negation_complements(self, rng):
        for _ in range(50):
            scores = rng.normal(size=40)
            labels = np.arange(40) % 3 == 0
            assert roc_auc(scores, labels) + roc_auc(-scores, labels) == pytest.approx(1.0, abs=1e-15)

    def test_matches_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 201))
            scores = rng.integers(0, 10, size=n).astype(float)
            labels = (rng.random(n) < 0.4).astype(int)
            labels[0], labels[-1] = 1, 0
            assert roc_auc(scores, labels) == oracles.roc_auc(scores.tolist(), labels.tolist())


class TestBoxPlot:
    def test_one_to_nine(self):
        stats = boxplot_stats(range(1, 10))
        assert (stats.q1, stats.median, stats.q3, stats.iqr) == (3, 5, 7, 4)
        assert (stats.lower_fence, stats.upper_fence) == (-3, 13)
        assert stats.outliers == ()

    def test_single_value(self):
        stats = boxplot_stats([2.5])
        assert {stats.min, stats.q1, stats.median, stats.q3, stats.max} == {2.5}

    def test_outlier(self):
        stats = boxplot_stats([0, 0, 0, 0, 100])
        assert stats.q1 == stats.q3 == 0
        assert stats.outliers == (100.0,)

    def test_order_invariant(self, rng):
        values = rng.normal(size=31)
        assert boxplot_stats(values) == boxplot_stats(rng.permutation(values))

    def test_interpolation(self):
        stats = boxplot_stats([1.0, 2.0, 4.0, 8.0])
        # positions 0.75, 1.5, 2.25
        assert (stats.q1, stats.median, stats.q3) == (1.75, 3.0, 5.0)

    def test_empty(self):
        with pytest.raises(EmptyError):
            boxplot_stats([])


class TestPearson:
    def test_identity(self):
        assert pearson([1, 2, 5], [1, 2, 5]) == pytest.approx(1.0)

    def test_negated(self):
        assert pearson([1, 2, 5], [-1, -2, -5]) == pytest.approx(-1.0)

    def test_hand_expansion(self):
        assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(3 / math.sqrt(2 * 14 / 3), abs=1e-15)
        assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(0.98198, abs=1e-5)

    def test_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            pearson([1, 1, 1], [1, 2, 3])

    def test_length(self):
        with pytest.raises(LengthMismatchError):
            pearson([1, 2], [1, 2, 3])
        with pytest.raises(LengthMismatchError):
            pearson([1], [1])

    def test_affine_invariant(self, rng):
        x, y = rng.normal(size=20), rng.normal(size=20)
        assert pearson(3 * x - 7, 0.2 * y + 100) == pytest.approx(pearson(x, y), abs=1e-10)


class TestEvaluate:
    def test_perfect(self):
        Y = np.array([[1, 0], [0, 1], [1, 1], [0, 0]])
        report = evaluate(Y.astype(float), LabelMatrix.from_array(Y))
        assert report.map == 1.0 and report.mean_auc == 1.0
        assert report.excluded == {}

    def test_two_class_composition(self):
        P = np.array([[0.9, 0.8], [0.8, 0.6], [0.7, 0.4], [0.6, 0.2]])
        Y = np.array([[1, 1], [0, 0], [1, 1], [0, 0]])
        report = evaluate(P, LabelMatrix.from_array(Y))
        ap0 = average_precision(P[:, 0], Y[:, 0])
        assert report.ap.tolist() == [ap0, ap0]
        assert report.map == pytest.approx(5 / 6)
        assert report.auc.tolist() == [0.75, 0.75]
        assert report.mean_auc == 0.75
        assert report.positives.tolist() == [2, 2]

    def test_single_class(self):
        P = np.array([[0.1], [0.9], [0.4]])
        Y = np.array([[1], [0], [1]])
        report = evaluate(P, LabelMatrix.from_array(Y))
        assert report.map == average_precision(P[:, 0], Y[:, 0])
        assert report.mean_auc == roc_auc(P[:, 0], Y[:, 0])

    def test_excludes_undefined(self):
        Y = np.array([[1, 0, 1], [0, 0, 1]])
        P = np.array([[0.9, 0.1, 0.3], [0.2, 0.5, 0.4]])
        with pytest.warns(ExcludedClassWarning):
            report = evaluate(P, LabelMatrix.from_array(Y))
        assert report.excluded == {"class01": "no_positives", "class02": "one_class_only"}
        # class02 is all-positive: AP is defined (1.0), AUC is not
        assert report.map == 1.0
        assert np.isnan(report.auc[2]) and report.ap[2] == 1.0
        assert report.mean_auc == 1.0
        assert [w["code"] for w in report.warnings] == ["EXCLUDED_CLASS", "EXCLUDED_CLASS"]
        assert report.records()[1]["ap"] is None

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            evaluate(np.zeros((2, 3)), LabelMatrix.from_array([[1, 0], [0, 1]]))
