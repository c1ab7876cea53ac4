"""Unweighted vs difficulty-weighted training on held-out data.

Run with ``python demos/02_weighted_training.py``. Takes a few seconds.
"""

import warnings

import numpy as np

from classdiff import ConcretenessLexicon, SynthConfig, TrainConfig, difficulty_profile, evaluate, generate, train
from classdiff.rng import Xoshiro256
from classdiff.synth import train_test_split

seed = 4
spread = np.linspace(0.2, 1.2, 20)[Xoshiro256(seed + 1000).permutation(20)]
config = SynthConfig(n_classes=20, n_samples=4000, feature_dim=16, freq_exponent=1.5,
                     spread=tuple(spread), cooc_groups=[[0, 1, 2, 3], [4, 5, 6, 7]] + [[c] for c in range(8, 20)],
                     group_p=0.5, seed=seed)
labels, features, names = generate(config)
(train_y, train_x), (test_y, test_x) = train_test_split(labels, features, 0.5)

rng = Xoshiro256(seed + 7)
lexicon = ConcretenessLexicon({n: 1 + 4 * rng.uniform() for n in names})
profile = difficulty_profile(train_y, train_x, lexicon)

# Same seed, same batches; the only difference is the per-class loss weight.

reports = {}
for label, weights in (("unweighted", None), ("weighted", tuple(profile.weight))):
    model, trace = train(train_y, train_x, TrainConfig(iterations=5000, seed=seed, class_weights=weights))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports[label] = evaluate(model.predict(test_x.data), test_y)
    print(f"{label:<11} final batch loss {trace[-50:].mean():.3f}")

for label, report in reports.items():
    box = report.ap_box
    print(f"{label:<11} MAP {report.map:.3f}  AP quartiles "
          f"{box.q1:.3f} / {box.median:.3f} / {box.q3:.3f}  IQR {box.iqr:.3f}")
