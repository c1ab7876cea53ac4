"""Per-class ranking metrics, box-plot summaries and correlation."""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyError,
    ExcludedClassWarning,
    LengthMismatchError,
    NoPositivesError,
    OneClassOnlyError,
    ShapeMismatchError,
    ZeroVarianceError,
)

__all__ = [
    "BoxPlotStats",
    "EvaluationReport",
    "average_precision",
    "boxplot_stats",
    "evaluate",
    "pearson",
    "roc_auc",
]


def _check_pair(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise LengthMismatchError(f"scores {scores.shape} and labels {labels.shape} differ")
    return scores, labels.astype(bool)


def average_precision(scores, labels):
    """Mean of precision@k over the ranks k that hold a positive.

    Ranking is by descending score; ties keep the original order.
    """
    scores, labels = _check_pair(scores, labels)
    n_pos = int(labels.sum())
    if n_pos == 0:
        raise NoPositivesError("average precision needs at least one positive")
    order = np.argsort(-scores, kind="stable")
    hits = labels[order]
    ranks = np.flatnonzero(hits) + 1
    precisions = np.arange(1, n_pos + 1) / ranks
    return math.fsum(precisions.tolist()) / n_pos


def roc_auc(scores, labels):
    """Probability that a positive outscores a negative, ties counting half."""
    scores, labels = _check_pair(scores, labels)
    pos, neg = scores[labels], np.sort(scores[~labels])
    if pos.size == 0 or neg.size == 0:
        raise OneClassOnlyError("ROC AUC needs both positives and negatives")
    below = np.searchsorted(neg, pos, side="left")
    not_above = np.searchsorted(neg, pos, side="right")
    # twice the win count, kept integral so the result is exact
    doubled = int(below.sum()) + int(not_above.sum())
    return doubled / (2 * pos.size * neg.size)


@dataclass(frozen=True)
class BoxPlotStats:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    iqr: float
    lower_fence: float
    upper_fence: float
    outliers: tuple

    def as_dict(self):
        d = dict(self.__dict__)
        d["outliers"] = list(self.outliers)
        return d


def boxplot_stats(values):
    """Quartiles by linear interpolation at ``p * (n - 1)`` and 1.5 IQR fences."""
    values = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if values.size == 0:
        raise EmptyError("box-plot statistics need at least one value")
    q1, median, q3 = np.quantile(values, [0.25, 0.5, 0.75], method="linear")
    iqr = q3 - q1
    lower, upper = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    outliers = tuple(float(v) for v in values if v < lower or v > upper)
    return BoxPlotStats(float(values[0]), float(q1), float(median), float(q3),
                        float(values[-1]), float(iqr), float(lower), float(upper), outliers)


def pearson(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"lengths {x.shape} and {y.shape} differ")
    if x.size < 2:
        raise LengthMismatchError("correlation needs at least two points")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = dx @ dx, dy @ dy
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVarianceError("correlation undefined for a constant vector")
    return float(np.clip((dx @ dy) / math.sqrt(sxx * syy), -1.0, 1.0))


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """Per-class AP/AUC with their means and spreads.

    ``ap``/``auc`` hold NaN for classes where the metric is undefined; such
    classes are listed in ``excluded`` and left out of that metric's mean.
    """

    class_names: tuple
    ap: np.ndarray
    auc: np.ndarray
    positives: np.ndarray
    map: float
    mean_auc: float
    ap_box: BoxPlotStats
    auc_box: BoxPlotStats
    excluded: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def records(self):
        rows = []
        for i, name in enumerate(self.class_names):
            rows.append({
                "name": name,
                "positives": int(self.positives[i]),
                "ap": None if np.isnan(self.ap[i]) else float(self.ap[i]),
                "auc": None if np.isnan(self.auc[i]) else float(self.auc[i]),
            })
        return rows


def _mean(values):
    defined = values[~np.isnan(values)]
    return math.fsum(defined.tolist()) / defined.size if defined.size else math.nan


def evaluate(predictions, labels):
    """Score every column of ``predictions`` against the matching label column."""
    P = np.asarray(predictions, dtype=np.float64)
    Y = labels.data
    if P.shape != Y.shape:
        raise ShapeMismatchError(f"predictions {P.shape} vs labels {Y.shape}")
    k = Y.shape[1]
    ap, auc = np.full(k, np.nan), np.full(k, np.nan)
    excluded, recorded = {}, []
    for j in range(k):
        name = labels.class_names[j]
        try:
            ap[j] = average_precision(P[:, j], Y[:, j])
        except NoPositivesError:
            excluded[name] = "no_positives"
        try:
            auc[j] = roc_auc(P[:, j], Y[:, j])
        except OneClassOnlyError:
            excluded.setdefault(name, "one_class_only")
    for name, reason in excluded.items():
        warning = ExcludedClassWarning(
            f"class {name!r} excluded from means ({reason})", class_name=name, reason=reason)
        warnings.warn(warning, stacklevel=2)
        recorded.append(warning.as_record())

    def box(values):
        defined = values[~np.isnan(values)]
        return boxplot_stats(defined) if defined.size else None

    return EvaluationReport(
        class_names=labels.class_names,
        ap=ap,
        auc=auc,
        positives=Y.sum(axis=0),
        map=_mean(ap),
        mean_auc=_mean(auc),
        ap_box=box(ap),
        auc_box=box(auc),
        excluded=excluded,
        warnings=recorded,
    )
