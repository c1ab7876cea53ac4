"""Difficulty factors on a small synthetic dataset.

Run with ``python demos/01_difficulty_factors.py``.
"""

import numpy as np

from classdiff import ConcretenessLexicon, SynthConfig, difficulty_profile, generate
from classdiff.factors import FACTOR_NAMES

# A six-class dataset: a power-law class prior, two classes that tend to
# appear together, and a per-class feature spread.

config = SynthConfig(n_classes=6, n_samples=600, feature_dim=8, freq_exponent=1.2,
                     spread=(0.2, 0.4, 0.6, 0.8, 1.0, 1.2),
                     cooc_groups=[[0, 1], [2], [3], [4], [5]], group_p=0.6, seed=3)
labels, features, names = generate(config)
print("positives per class:", labels.data.sum(axis=0))

# Concreteness ratings live on a 1 to 5 scale. Lookup is forgiving about
# case, plurals and small typos, so these keys still match the class names.

lexicon = ConcretenessLexicon({"Class00": 4.8, "class01s": 4.1, "class02": 3.5,
                               "class03": 2.9, "clas04": 2.2, "class05": 1.4})

profile = difficulty_profile(labels, features, lexicon)
print(f"\n{'class':<10}" + "".join(f"{n[:10]:>12}" for n in FACTOR_NAMES) + f"{'score':>8}{'weight':>8}")
for i, name in enumerate(profile.class_names):
    row = "".join(f"{getattr(profile, f)[i]:12.3f}" for f in FACTOR_NAMES)
    print(f"{name:<10}{row}{profile.score[i]:8.3f}{profile.weight[i]:8.3f}")
print("lexicon matches:", profile.match_kinds)

# Weights are reciprocal scores rescaled to mean one, so classes with a
# low combined score get a larger share of the loss.

print("\nmean weight:", profile.weight.mean())
print("largest weight goes to", profile.class_names[int(np.argmax(profile.weight))])
