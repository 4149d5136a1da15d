#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# baseline.py

# --- import -----------------------------------
# import from standard lib
import hashlib
import logging
from dataclasses import dataclass
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
from varord.models.model import Hyperparams, Model

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RandomHyperparams(Hyperparams):
    family: ClassVar[str] = "random"


class RandomBaseline(Model):
    """uniform random choice among the labels, as a pure function of (seed, row)"""

    family = "random"
    hyperparams_class = RandomHyperparams

    def _fit(self, X, y):
        pass

    def _predict(self, X):
        key = self.seed.to_bytes(8, "little")
        out = np.empty(len(X), dtype=int)
        for k, row in enumerate(np.ascontiguousarray(X, dtype="<f8")):
            digest = hashlib.sha256(key + row.tobytes()).digest()
            out[k] = int.from_bytes(digest[:8], "little") % self.n_classes
        return out

    def get_params(self):
        return {}

    def set_params(self, params_):
        pass
