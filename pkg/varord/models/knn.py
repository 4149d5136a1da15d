#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# knn.py

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
import varord.util as util
from varord.models.model import Hyperparams, Model, check_positive

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

# test rows per distance block
_BLOCK = 64


@dataclass(frozen=True)
class KNNHyperparams(Hyperparams):
    family: ClassVar[str] = "knn"
    k: int = 5

    def __post_init__(self):
        check_positive("k", self.k)


class KNNClassifier(Model):
    """majority vote of the k nearest training rows (euclidean distance)

    Distance ties keep training order; vote ties go to the lowest label.
    """

    family = "knn"
    hyperparams_class = KNNHyperparams

    def _fit(self, X, y):
        self._X = X.copy()
        self._y = y.copy()

    def _predict(self, X):
        k = min(self.hp.k, len(self._y))
        out = np.empty(len(X), dtype=int)
        for block in util.chunks(np.arange(len(X)), _BLOCK):
            diff = X[block, np.newaxis, :] - self._X[np.newaxis, :, :]
            dist = np.einsum("ijk,ijk->ij", diff, diff)
            nearest = np.argsort(dist, axis=1, kind="stable")[:, :k]
            for row, idx in zip(block, nearest):
                votes = np.bincount(self._y[idx], minlength=self.n_classes)
                out[row] = int(np.argmax(votes))
        return out

    def get_params(self):
        return {"X": self._X.tolist(), "y": self._y.tolist()}

    def set_params(self, params_):
        self._X = np.asarray(params_["X"], dtype=float).reshape(-1, self.n_features)
        self._y = np.asarray(params_["y"], dtype=int)
