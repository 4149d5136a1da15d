#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# selection.py

"""
    Model evaluation and selection: accuracy, confusion matrix, k-fold
    cross-validation and grid search.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass

# import from other lib
import numpy as np

# import from my project
import varord.models as models
import varord.util as util
from varord.errors import HyperparamError, ModelError

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)


# ----------------------------------------------
def accuracy(m, X, y):
    """fraction of rows of X whose predicted label is y"""
    y = np.asarray(y, dtype=int)
    if len(y) == 0:
        raise ModelError("Invalid evaluation set, no row")
    return float(np.mean(m.predict(X) == y))


def confusion_matrix(m, X, y):
    """counts[true label, predicted label]"""
    y = np.asarray(y, dtype=int)
    counts = np.zeros((m.n_classes, m.n_classes), dtype=int)
    np.add.at(counts, (y, m.predict(X)), 1)
    return counts


def kfold_indices(n, k, seed):
    """k disjoint folds covering range(n), sizes differing by at most one

    >>> [len(f) for f in kfold_indices(11, 5, seed=0)]
    [3, 2, 2, 2, 2]
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 2 or k > n:
        raise ModelError(f"Invalid number of folds -{k}- for {n} rows")
    order = util.rng(seed).permutation(n)
    return [np.sort(fold) for fold in np.array_split(order, k)]


@dataclass(frozen=True)
class CVResult(object):
    mean: float
    folds: tuple

    def to_dict(self):
        return {"mean": self.mean, "folds": list(self.folds)}


def cross_validate(family, hp, X, y, k=5, seed=0):
    """mean and per fold held-out accuracy"""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    scores = []
    for test in kfold_indices(len(y), k, seed):
        mask = np.ones(len(y), dtype=bool)
        mask[test] = False
        m = models.train(family, hp, X[mask], y[mask], seed=seed)
        scores.append(accuracy(m, X[test], y[test]))
    return CVResult(float(np.mean(scores)), tuple(scores))


def grid_search(family, grid, X, y, k=5, seed=0):
    """best hyperparameters by mean cross-validated accuracy

    Ties keep the earliest grid point.

    :return: (best hyperparameters, [(hyperparameters, CVResult), ...])
    """
    grid = list(grid)
    if not grid:
        raise HyperparamError(f"Invalid grid for {family}, no hyperparameters")
    table = []
    for hp in grid:
        try:
            result = cross_validate(family, hp, X, y, k=k, seed=seed)
        except Exception:
            _logger.exception(f"Something goes wrong when cross-validating {family} -{hp.describe()}-")
            raise  # Throw exception again so calling code knows it happened
        _logger.debug(f"{family} {hp.describe()}: cv {result.mean:.4f}")
        table.append((hp, result))
    best = max(range(len(table)), key=lambda i: (table[i][1].mean, -i))
    _logger.info(f"{family}: best {table[best][0].describe()} (cv {table[best][1].mean:.4f})")
    return table[best][0], table
