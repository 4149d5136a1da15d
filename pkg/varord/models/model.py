#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# model.py

"""
    Base classes shared by every classifier family.

    A family module defines a frozen ``Hyperparams`` dataclass and a ``Model``
    subclass, both tagged with the family name. Classes found in the package are
    registered by ``varord.models``.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass, fields
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
import varord.util as util
from varord.errors import HyperparamError, ModelError

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

# one class per ordering of 3 variables
N_CLASSES = 6


def _jsonable(value_):
    if isinstance(value_, tuple):
        return [_jsonable(v) for v in value_]
    return value_


def check_positive(name_, value_, type_=int, allow_none=False):
    """raise HyperparamError unless value_ is a positive number of type type_"""
    if value_ is None and allow_none:
        return
    if isinstance(value_, bool) or not isinstance(value_, type_) or not value_ > 0:
        raise HyperparamError(f"Invalid hyperparameter {name_} -{value_}-, must be positive")


# ----------------------------------------------
@dataclass(frozen=True)
class Hyperparams(object):
    family: ClassVar[str] = None

    def to_dict(self):
        d = {"family": self.family}
        d.update({f.name: _jsonable(getattr(self, f.name)) for f in fields(self)})
        return d

    @classmethod
    def from_dict(cls, dict_):
        family = dict_.get("family", cls.family)
        if family != cls.family:
            raise HyperparamError(f"Invalid family -{family}-, expected {cls.family}")
        names = {f.name for f in fields(cls)}
        unknown = set(dict_) - names - {"family"}
        if unknown:
            raise HyperparamError(f"Invalid {cls.family} hyperparameter(s) -{sorted(unknown)}-")
        return cls(**{k: v for k, v in dict_.items() if k in names})

    def describe(self):
        """short text used in reports, ie 'k=5'"""
        parts = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = "(" + ",".join(str(v) for v in value) + ")"
            parts.append(f"{f.name}={value}")
        return " ".join(parts)


class Model(object):
    """classifier over scaled feature rows, labels in 0..n_classes-1"""

    family = None
    hyperparams_class = None

    def __init__(self, hp=None, seed=0, n_classes=N_CLASSES):
        if hp is None:
            hp = self.hyperparams_class()
        if not isinstance(hp, self.hyperparams_class):
            raise HyperparamError(
                f"Invalid hyperparameters -{hp}- for family {self.family}"
            )
        self.hp = hp
        self.seed = util.check_seed(seed)
        self.n_classes = int(n_classes)
        self.n_features = None
        # scaler the training rows were standardised with
        self.scaler = None

    def __repr__(self):
        return f"{type(self).__name__}({self.hp.describe()}, seed={self.seed})"

    @property
    def is_trained(self):
        return self.n_features is not None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[0] == 0:
            raise ModelError(f"Invalid training set, shape -{X.shape}-")
        if y.shape != (X.shape[0],):
            raise ModelError(f"Invalid labels, shape -{y.shape}- for {X.shape[0]} rows")
        y = y.astype(int)
        if y.min() < 0 or y.max() >= self.n_classes:
            raise ModelError(f"Invalid labels, must be in 0..{self.n_classes - 1}")
        self.n_features = X.shape[1]
        _logger.debug(f"fit {self!r} on {X.shape[0]} rows")
        self._fit(X, y)
        return self

    def _check_input(self, X_):
        if not self.is_trained:
            raise ModelError(f"{self.family} model is not trained")
        X = np.atleast_2d(np.asarray(X_, dtype=float))
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ModelError(
                f"Invalid input dimension -{X.shape[-1]}-, model expects {self.n_features}"
            )
        return X

    def predict(self, X):
        """labels of the rows of X (already scaled)"""
        X = self._check_input(X)
        return np.asarray(self._predict(X), dtype=int)

    def predict_one(self, v):
        return int(self.predict(np.asarray(v, dtype=float)[np.newaxis, :])[0])

    # --- family specific ----------------------
    def _fit(self, X, y):
        raise NotImplementedError

    def _predict(self, X):
        raise NotImplementedError

    def get_params(self):
        """learned parameters, as JSON compatible values"""
        raise NotImplementedError

    def set_params(self, params_):
        raise NotImplementedError
