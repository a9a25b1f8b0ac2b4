"""Pure numpy fallback for the Monte-Carlo tally kernels.

Totals are accumulated row-by-row in the same order as the compiled
kernel so both backends agree bitwise on identical draws.
"""

from __future__ import annotations

import numpy as np


def tally_argmax(draws, perm_cols, counts):
    n_samples, k, _ = draws.shape
    n_perms = perm_cols.shape[0]
    totals = np.zeros((n_samples, n_perms))
    for i in range(k):
        totals += draws[:, i, perm_cols[:, i]]
    counts += np.bincount(np.argmax(totals, axis=1), minlength=n_perms)


def count_positive_2x2(draws):
    return int(np.count_nonzero((draws[:, 0] + draws[:, 3]) - (draws[:, 1] + draws[:, 2]) > 0.0))
