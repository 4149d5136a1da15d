#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# forest.py

# --- import -----------------------------------
# import from standard lib
import logging
import math
from dataclasses import dataclass
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
import varord.util as util
from varord.errors import HyperparamError
from varord.models.model import Hyperparams, Model, check_positive
from varord.models.tree import DecisionTreeClassifier, TreeHyperparams

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

MAX_FEATURES = ("sqrt", "all")


@dataclass(frozen=True)
class ForestHyperparams(Hyperparams):
    family: ClassVar[str] = "rf"
    n_trees: int = 100
    max_features: str = "sqrt"
    max_depth: int = None
    min_samples_split: int = 2

    def __post_init__(self):
        check_positive("n_trees", self.n_trees)
        if self.max_features not in MAX_FEATURES:
            raise HyperparamError(
                f"Invalid hyperparameter max_features -{self.max_features}-, must be one of {MAX_FEATURES}"
            )
        check_positive("max_depth", self.max_depth, allow_none=True)
        check_positive("min_samples_split", self.min_samples_split)

    def tree_hyperparams(self):
        return TreeHyperparams(max_depth=self.max_depth, min_samples_split=self.min_samples_split)


class RandomForestClassifier(Model):
    """majority vote of trees grown on bootstrap resamples

    Tree t draws its resample and its per-node features from a generator
    derived from (seed, t).
    """

    family = "rf"
    hyperparams_class = ForestHyperparams

    @classmethod
    def from_trees(cls, trees_, hp=None, seed=0):
        """forest voting with already grown trees"""
        trees = list(trees_)
        if hp is None:
            hp = ForestHyperparams(n_trees=len(trees), max_features="all")
        forest = cls(hp, seed=seed, n_classes=trees[0].n_classes)
        forest.trees = trees
        forest.n_features = trees[0].n_features
        return forest

    def _max_features(self, n_features_):
        if self.hp.max_features == "sqrt":
            return max(1, int(math.sqrt(n_features_)))
        return n_features_

    def _fit(self, X, y):
        n, d = X.shape
        max_features = self._max_features(d)
        self.trees = []
        for t in range(self.hp.n_trees):
            gen = util.rng(self.seed, t)
            sample = gen.integers(0, n, size=n)
            tree = DecisionTreeClassifier(
                self.hp.tree_hyperparams(), seed=self.seed, n_classes=self.n_classes
            )
            self.trees.append(tree.grow(X[sample], y[sample], gen=gen, max_features=max_features))

    def _predict(self, X):
        votes = np.zeros((len(X), self.n_classes), dtype=int)
        rows = np.arange(len(X))
        for tree in self.trees:
            votes[rows, tree._predict(X)] += 1
        return np.argmax(votes, axis=1)

    def get_params(self):
        return {"trees": [tree.get_params() for tree in self.trees]}

    def set_params(self, params_):
        self.trees = []
        for p in params_["trees"]:
            tree = DecisionTreeClassifier(
                self.hp.tree_hyperparams(), seed=self.seed, n_classes=self.n_classes
            )
            tree.n_features = self.n_features
            tree.set_params(p)
            self.trees.append(tree)
