"""Predicting per-class AP from difficulty factors.

Run with ``python demos/04_predicting_performance.py``. Takes a few seconds.
"""

import warnings

import numpy as np

from classdiff import ConcretenessLexicon, SynthConfig, TrainConfig, difficulty_profile, evaluate, generate, train
from classdiff import fit_ols, loocv_predict, pearson
from classdiff.factors import FACTOR_NAMES
from classdiff.rng import Xoshiro256
from classdiff.synth import train_test_split

seed = 1
spread = np.linspace(0.2, 1.2, 20)[Xoshiro256(seed + 1000).permutation(20)]
config = SynthConfig(n_classes=20, n_samples=4000, feature_dim=16, freq_exponent=1.5,
                     spread=tuple(spread), cooc_groups=[[0, 1, 2, 3], [4, 5, 6, 7]] + [[c] for c in range(8, 20)],
                     group_p=0.5, seed=seed)
labels, features, names = generate(config)
(train_y, train_x), (test_y, test_x) = train_test_split(labels, features, 0.5)
rng = Xoshiro256(seed + 7)
profile = difficulty_profile(train_y, train_x, ConcretenessLexicon({n: 1 + 4 * rng.uniform() for n in names}))

model, _ = train(train_y, train_x, TrainConfig(iterations=20000, seed=seed))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    ap = evaluate(model.predict(test_x.data), test_y).ap

# How well does each factor track AP on its own?

X = np.column_stack([getattr(profile, name) for name in FACTOR_NAMES])
for j, name in enumerate(FACTOR_NAMES):
    print(f"{name:<22} r = {pearson(X[:, j], ap):+.3f}")

# A linear model on all four factors, scored by leave-one-class-out, so
# each class is predicted by a fit that never saw it.

fit = fit_ols(X, ap)
print("\ncoefficients:", np.round(fit.coefficients, 3), "intercept:", round(fit.intercept, 3))
predicted, r = loocv_predict(X, ap)
print(f"LOOCV r with all four factors: {r:.3f}")
best = max(loocv_predict(X[:, [j]], ap)[1] for j in range(4))
print(f"best single-factor LOOCV r:    {best:.3f}")
