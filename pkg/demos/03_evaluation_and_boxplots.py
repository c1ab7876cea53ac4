"""Per-class AP and AUC, box-plot summaries and exclusions.

Run with ``python demos/03_evaluation_and_boxplots.py``.
"""

import warnings

import numpy as np

from classdiff import LabelMatrix, average_precision, boxplot_stats, evaluate, roc_auc

# Ties keep their original order when ranking for AP, and count half for AUC.

scores = np.array([0.9, 0.8, 0.8, 0.4, 0.1])
truth = np.array([1, 0, 1, 0, 1])
print("AP ", average_precision(scores, truth))
print("AUC", roc_auc(scores, truth))

# A class with no positives has no AP and would bias the means, so it is
# left out with a warning rather than scored as zero.

rng = np.random.default_rng(0)
Y = (rng.random((50, 4)) < 0.3).astype(int)
Y[:, 3] = 0
labels = LabelMatrix.from_array(Y, ["cat", "dog", "car", "unicorn"])
predictions = 0.5 * Y + rng.random(Y.shape)
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    report = evaluate(predictions, labels)
for w in caught:
    print("warning:", w.message)
print("per-class AP:", np.round(report.ap, 3))
print("MAP over the defined classes:", round(report.map, 3))

# Quartiles interpolate linearly; points beyond 1.5 IQR are outliers.

stats = boxplot_stats([0.12, 0.31, 0.33, 0.35, 0.38, 0.41, 0.44, 0.95])
for key, value in stats.as_dict().items():
    print(f"{key:>12}: {value}")
