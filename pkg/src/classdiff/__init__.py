"""Class-level difficulty factors for multi-label classification.

Compute per-class frequency, visual variation, semantic abstraction and
co-occurrence factors, turn them into difficulty-weighted loss weights,
and evaluate per-class performance.
"""

__version__ = "0.1.0"

from .core import FeatureMatrix, LabelMatrix, class_counts
from .factors import (
    DifficultyProfile,
    FactorSelection,
    combine_factors,
    compute_cooccurrence,
    compute_frequency,
    compute_semantic_abstraction,
    compute_visual_variation,
    cooccurrence_matrix,
    difficulty_profile,
    loss_weights,
)
from .lexicon import ConcretenessLexicon, load_lexicon, lookup, normalize_term
from .metrics import EvaluationReport, average_precision, boxplot_stats, evaluate, pearson, roc_auc
from .predictor import RegressionModel, fit_ols, loocv_predict
from .synth import SynthConfig, generate
from .trainer import LinearModel, TrainConfig, forward, gradient, train, weighted_bce
