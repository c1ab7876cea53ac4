import math
import warnings

import numpy as np
import pytest

from classdiff import FeatureMatrix, LabelMatrix, class_counts
from classdiff.errors import (
    DegenerateMaxWarning,
    MissingFactorError,
    NoPositivesError,
    ZeroCountError,
    ZeroVectorError,
)
from classdiff.factors import (
    FactorSelection,
    combine_factors,
    compute_cooccurrence,
    compute_frequency,
    compute_semantic_abstraction,
    compute_visual_variation,
    cooccurrence_matrix,
    difficulty_profile,
    loss_weights,
    visual_variation_raw,
)
from classdiff.lexicon import ConcretenessLexicon

import oracles
from conftest import random_labels

TOY = [[1, 1, 0], [1, 0, 1], [1, 0, 0]]


class TestFrequency:
    def test_log_ratio(self):
        np.testing.assert_allclose(compute_frequency([10, 100, 1000]), [1 / 3, 2 / 3, 1.0], rtol=1e-12)

    def test_equal_counts(self):
        assert compute_frequency([5, 5, 5]).tolist() == [1.0, 1.0, 1.0]

    def test_singleton_is_zero(self):
        np.testing.assert_allclose(compute_frequency([1, math.e]), [0.0, 1.0])

    def test_zero_count(self):
        with pytest.raises(ZeroCountError):
            compute_frequency([3, 0])

    def test_all_singletons_warns(self):
        with pytest.warns(DegenerateMaxWarning):
            assert compute_frequency([1, 1]).tolist() == [0.0, 0.0]

    def test_log_base_invariant(self, rng):
        for _ in range(50):
            counts = rng.integers(1, 5000, size=rng.integers(1, 12))
            counts[0] = max(counts[0], 2)
            np.testing.assert_allclose(compute_frequency(counts), compute_frequency(counts, base=10),
                                       atol=1e-12, rtol=0)

    def test_matches_oracle(self, rng):
        for _ in range(50):
            counts = rng.integers(1, 500, size=rng.integers(2, 12))
            counts[0] = max(counts[0], 2)
            assert compute_frequency(counts).tolist() == oracles.frequency(counts.tolist())


class TestVisualVariation:
    def test_hand_example(self):
        labels = LabelMatrix.from_array([[1, 0], [1, 0], [0, 1], [0, 1]])
        features = FeatureMatrix(np.array([[1.0, 0], [0, 1], [1, 1], [1, 1]]))
        raw = visual_variation_raw(labels, features)
        np.testing.assert_allclose(raw, [1 - 0.5 / math.sqrt(0.5), 0.0], atol=1e-15)
        assert raw[0] == pytest.approx(0.2928932188134524)
        np.testing.assert_allclose(compute_visual_variation(labels, features), [1.0, 0.0])

    def test_single_positive_is_zero(self):
        labels = LabelMatrix.from_array([[1, 1], [0, 1]])
        features = FeatureMatrix(np.array([[0.3, 0.4], [1.0, -2.0]]))
        assert visual_variation_raw(labels, features)[0] == 0.0

    def test_identical_vectors_zero(self):
        labels = LabelMatrix.from_array([[1], [1], [1]])
        features = FeatureMatrix(np.tile([0.1, 0.7, 0.3], (3, 1)))
        assert visual_variation_raw(labels, features)[0] == 0.0

    def test_all_zero_warns(self):
        labels = LabelMatrix.from_array([[1], [1]])
        features = FeatureMatrix(np.ones((2, 3)))
        with pytest.warns(DegenerateMaxWarning):
            assert compute_visual_variation(labels, features).tolist() == [0.0]

    def test_no_positives(self):
        labels = LabelMatrix.from_array([[1, 0], [1, 0]])
        with pytest.raises(NoPositivesError):
            visual_variation_raw(labels, FeatureMatrix(np.ones((2, 2))))

    def test_zero_vector(self):
        labels = LabelMatrix.from_array([[1], [1]])
        with pytest.raises(ZeroVectorError):
            visual_variation_raw(labels, FeatureMatrix(np.array([[0.0, 0.0], [1.0, 0.0]])))

    def test_matches_loop_oracle(self, rng):
        labels = random_labels(rng, 40, 5)
        X = rng.normal(size=(40, 6))
        raw = visual_variation_raw(labels, FeatureMatrix(X))
        for j in range(5):
            rows = [X[i].tolist() for i in range(40) if labels.data[i, j]]
            centroid = [sum(col) / len(rows) for col in zip(*rows)]
            expected = max(oracles.cosine_distance(r, centroid) for r in rows)
            assert raw[j] == pytest.approx(expected, abs=1e-12)

    def test_scale_invariant(self, rng):
        labels = random_labels(rng, 50, 6)
        X = rng.normal(size=(50, 4))
        base = compute_visual_variation(labels, FeatureMatrix(X))
        scaled = compute_visual_variation(labels, FeatureMatrix(X * 37.5))
        np.testing.assert_allclose(base, scaled, atol=1e-12)


class TestSemanticAbstraction:
    def test_exact(self):
        values, kinds = compute_semantic_abstraction(["Walk "], ConcretenessLexicon({"walk": 4.0}))
        assert values.tolist() == [0.8] and kinds == ["exact"]

    def test_nearest(self):
        values, kinds = compute_semantic_abstraction(["runn"], ConcretenessLexicon({"run": 4.5, "sit": 4.0}))
        assert values.tolist() == [0.9] and kinds == ["nearest"]

    def test_maximal(self):
        values, _ = compute_semantic_abstraction(["stone"], ConcretenessLexicon({"stone": 5.0}))
        assert values.tolist() == [1.0]


class TestCooccurrence:
    def test_matrix_hand_example(self):
        C = cooccurrence_matrix(LabelMatrix.from_array(TOY))
        assert C.tolist() == [[0, 1, 1], [1, 0, 0], [1, 0, 0]]

    def test_identity(self):
        assert not cooccurrence_matrix(LabelMatrix.from_array(np.eye(3, dtype=int))).any()

    def test_single_row(self):
        assert cooccurrence_matrix(LabelMatrix.from_array([[1, 1]])).tolist() == [[0, 1], [1, 0]]

    def test_matrix_matches_pair_counting(self, rng):
        for _ in range(30):
            n, k = rng.integers(1, 51), rng.integers(1, 13)
            Y = (rng.random((n, k)) < 0.4).astype(int)
            C = cooccurrence_matrix(LabelMatrix.from_array(Y))
            assert C.tolist() == oracles.cooccurrence(Y.tolist())
            assert (C == C.T).all()
            counts = Y.sum(axis=0)
            assert (C <= np.minimum.outer(counts, counts)).all()

    def test_factor_hand_example(self):
        np.testing.assert_allclose(compute_cooccurrence(LabelMatrix.from_array(TOY)), [2 / 3, 1.0, 1.0])

    def test_factor_disjoint_warns(self):
        with pytest.warns(DegenerateMaxWarning):
            assert compute_cooccurrence(LabelMatrix.from_array(np.eye(3, dtype=int))).tolist() == [0, 0, 0]

    def test_always_together(self):
        Y = [[1, 1]] * 4
        assert compute_cooccurrence(LabelMatrix.from_array(Y)).tolist() == [1.0, 1.0]

    def test_zero_count(self):
        with pytest.raises(ZeroCountError):
            compute_cooccurrence(LabelMatrix.from_array([[1, 0]]))

    def test_row_duplication_invariant(self, rng):
        labels = random_labels(rng, 30, 7)
        doubled = LabelMatrix.from_array(np.vstack([labels.data, labels.data]))
        np.testing.assert_allclose(compute_cooccurrence(labels), compute_cooccurrence(doubled), rtol=1e-15)


class TestCombineAndWeights:
    def test_sum_of_maxima(self):
        factors = {name: [1.0] for name in ("frequency", "visual_variation",
                                             "semantic_abstraction", "cooccurrence")}
        assert combine_factors(factors).tolist() == [4.0]

    def test_single_factor_identity(self):
        out = combine_factors({"frequency": [0.5, 1.0], "cooccurrence": None},
                              FactorSelection.only("frequency"))
        assert out.tolist() == [0.5, 1.0]

    def test_direct_addition(self):
        factors = dict(frequency=[0.2], visual_variation=[0.3],
                       semantic_abstraction=[0.4], cooccurrence=[0.1])
        assert combine_factors(factors).tolist() == pytest.approx([1.0], abs=1e-15)

    def test_missing_factor(self):
        with pytest.raises(MissingFactorError):
            combine_factors({"frequency": [0.5]})

    def test_parse_selection(self):
        assert FactorSelection.parse("freq, cooc").selected == ("frequency", "cooccurrence")

    @pytest.mark.parametrize("scores, norm, expected", [
        ([4.0, 4.0], "mean_one", [1.0, 1.0]),
        ([1.0, 2.0], "none", [1.0, 0.5]),
        ([1.0, 2.0], "mean_one", [4 / 3, 2 / 3]),
    ])
    def test_weights(self, scores, norm, expected):
        np.testing.assert_allclose(loss_weights(scores, norm), expected, rtol=1e-15)

    def test_zero_score_floor(self):
        assert loss_weights([0.0, 1.0], "none").tolist() == [1000.0, 1.0]

    def test_mean_one_and_order_reversal(self, rng):
        for _ in range(200):
            scores = rng.uniform(1e-3, 4.0, size=rng.integers(2, 20))
            w = loss_weights(scores)
            assert abs(w.mean() - 1.0) < 1e-12
            assert (np.diff(w[np.argsort(scores)]) < 0).all()


class TestProfile:
    def test_requires_inputs(self):
        labels = LabelMatrix.from_array(TOY)
        with pytest.raises(MissingFactorError):
            difficulty_profile(labels)

    def test_frequency_only(self):
        labels = LabelMatrix.from_array(TOY)
        profile = difficulty_profile(labels, selection=FactorSelection.only("frequency", "cooccurrence"))
        expected_freq = compute_frequency(class_counts(labels))
        np.testing.assert_allclose(profile.score, expected_freq + [2 / 3, 1.0, 1.0])
        assert profile.visual_variation is None
        assert profile.weight.mean() == pytest.approx(1.0)
        rec = profile.records()[0]
        assert rec["name"] == "class00" and rec["count"] == 3 and rec["semantic_abstraction"] is None

    def test_records_degenerate_warnings(self):
        labels = LabelMatrix.from_array(np.eye(3, dtype=int))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            profile = difficulty_profile(labels, selection=FactorSelection.only("frequency"))
        assert [w["code"] for w in profile.warnings] == ["DEGENERATE_MAX"]
        assert profile.warnings[0]["factor"] == "frequency"
