"""Regress class-level performance on difficulty factors."""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError, NonFiniteValueError, RidgeFallbackWarning, TooFewClassesError
from .metrics import pearson

__all__ = ["RegressionModel", "fit_ols", "loocv_predict"]

RIDGE = 1e-8
MAX_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class RegressionModel:
    coefficients: np.ndarray
    intercept: float
    ridge: bool = False

    @property
    def n_features(self):
        return self.coefficients.size

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, None]
        return X @ self.coefficients + self.intercept


def _design(X, y):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] != y.shape[0] or y.ndim != 1:
        raise LengthMismatchError(f"{X.shape[0]} rows but {y.shape} targets")
    if not (np.isfinite(X).all() and np.isfinite(y).all()):
        raise NonFiniteValueError("regression inputs must be finite")
    return X, y


def fit_ols(X, y):
    """Least squares with intercept through the normal equations.

    When the Gram matrix is numerically singular a ridge term of ``RIDGE``
    is added to the slope entries, and the model is flagged.
    """
    X, y = _design(X, y)
    k, f = X.shape
    if k <= f + 1:
        raise TooFewClassesError(f"{k} classes cannot fit {f} factors plus intercept")
    A = np.column_stack([np.ones(k), X])
    gram = A.T @ A
    rhs = A.T @ y
    ridge = not np.linalg.cond(gram) <= MAX_CONDITION
    if ridge:
        warnings.warn(RidgeFallbackWarning("singular normal equations, ridge refit"), stacklevel=2)
        penalty = np.full(f + 1, RIDGE)
        penalty[0] = 0.0
        gram = gram + np.diag(penalty)
    beta = np.linalg.solve(gram, rhs)
    return RegressionModel(coefficients=beta[1:], intercept=float(beta[0]), ridge=bool(ridge))


def loocv_predict(X, y):
    """Leave-one-class-out predictions and their Pearson correlation with ``y``."""
    X, y = _design(X, y)
    k, f = X.shape
    if k <= f + 2:
        raise TooFewClassesError(f"{k} classes too few for leave-one-out with {f} factors")
    predictions = np.empty(k)
    keep = np.ones(k, dtype=bool)
    for i in range(k):
        keep[i] = False
        model = fit_ols(X[keep], y[keep])
        predictions[i] = model.predict(X[i:i + 1])[0]
        keep[i] = True
    return predictions, pearson(predictions, y)
