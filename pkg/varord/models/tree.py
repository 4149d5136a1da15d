#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# tree.py

"""
    CART decision tree: binary splits ``x[f] <= threshold`` chosen by the lowest
    weighted Gini impurity, thresholds at midpoints between consecutive distinct
    values, leaves holding the majority label.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
from varord.models.model import Hyperparams, Model, check_positive

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

LEAF = -1


@dataclass(frozen=True)
class TreeHyperparams(Hyperparams):
    family: ClassVar[str] = "dt"
    max_depth: int = None
    min_samples_split: int = 2

    def __post_init__(self):
        check_positive("max_depth", self.max_depth, allow_none=True)
        check_positive("min_samples_split", self.min_samples_split)


def best_split(X, y, n_classes, features):
    """(feature, threshold) of the lowest weighted Gini impurity, None if every
    candidate feature is constant

    Ties keep the first feature of features, then the lowest threshold.
    """
    n = len(y)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    total = onehot.sum(axis=0)
    n_left = np.arange(1, n, dtype=float)
    n_right = n - n_left

    best, best_score = None, np.inf
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        valid = xs[1:] > xs[:-1]
        if not valid.any():
            continue
        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = total - left
        gini_left = 1.0 - np.sum((left / n_left[:, np.newaxis]) ** 2, axis=1)
        gini_right = 1.0 - np.sum((right / n_right[:, np.newaxis]) ** 2, axis=1)
        score = (n_left * gini_left + n_right * gini_right) / n
        score[~valid] = np.inf
        i = int(np.argmin(score))
        if score[i] < best_score:
            threshold = (xs[i] + xs[i + 1]) / 2.0
            if not xs[i] <= threshold < xs[i + 1]:
                threshold = xs[i]
            best, best_score = (int(f), float(threshold)), score[i]
    return best


class DecisionTreeClassifier(Model):
    """tree stored as flat node arrays (feature, threshold, left, right, value)"""

    family = "dt"
    hyperparams_class = TreeHyperparams

    def _fit(self, X, y):
        self.grow(X, y)

    def grow(self, X, y, gen=None, max_features=None):
        """grow the tree; with gen, each node only looks at max_features random features"""
        feature, threshold, left, right, value = [], [], [], [], []
        n_features = X.shape[1]

        def _new_node(idx_):
            votes = np.bincount(y[idx_], minlength=self.n_classes)
            feature.append(LEAF)
            threshold.append(0.0)
            left.append(LEAF)
            right.append(LEAF)
            value.append(int(np.argmax(votes)))
            return len(value) - 1

        root = _new_node(np.arange(len(y)))
        stack = [(root, np.arange(len(y)), 0)]
        while stack:
            node, idx, depth = stack.pop()
            if len(idx) < self.hp.min_samples_split:
                continue
            if self.hp.max_depth is not None and depth >= self.hp.max_depth:
                continue
            if np.all(y[idx] == y[idx[0]]):
                continue
            if gen is None or max_features is None or max_features >= n_features:
                candidates = range(n_features)
            else:
                candidates = np.sort(gen.choice(n_features, size=max_features, replace=False))
            split = best_split(X[idx], y[idx], self.n_classes, candidates)
            if split is None:
                continue

            f, thr = split
            go_left = X[idx, f] <= thr
            feature[node], threshold[node] = f, thr
            left[node] = _new_node(idx[go_left])
            right[node] = _new_node(idx[~go_left])
            # left child expanded first
            stack.append((right[node], idx[~go_left], depth + 1))
            stack.append((left[node], idx[go_left], depth + 1))

        self.feature = np.asarray(feature, dtype=int)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=int)
        self.right = np.asarray(right, dtype=int)
        self.value = np.asarray(value, dtype=int)
        self.n_features = n_features
        return self

    @property
    def n_nodes(self):
        return len(self.value)

    def structure(self):
        """tree shape without thresholds"""
        return (
            tuple(self.feature.tolist()),
            tuple(self.left.tolist()),
            tuple(self.right.tolist()),
            tuple(self.value.tolist()),
        )

    def _predict(self, X):
        node = np.zeros(len(X), dtype=int)
        while True:
            f = self.feature[node]
            active = np.flatnonzero(f >= 0)
            if not len(active):
                break
            at = node[active]
            go_left = X[active, f[active]] <= self.threshold[at]
            node[active] = np.where(go_left, self.left[at], self.right[at])
        return self.value[node]

    def get_params(self):
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    def set_params(self, params_):
        self.feature = np.asarray(params_["feature"], dtype=int)
        self.threshold = np.asarray(params_["threshold"], dtype=float)
        self.left = np.asarray(params_["left"], dtype=int)
        self.right = np.asarray(params_["right"], dtype=int)
        self.value = np.asarray(params_["value"], dtype=int)
