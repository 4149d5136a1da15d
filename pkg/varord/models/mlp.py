#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# mlp.py

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass
from numbers import Real
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
import varord.util as util
from varord.errors import HyperparamError
from varord.models.model import Hyperparams, Model, check_positive

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MLPHyperparams(Hyperparams):
    family: ClassVar[str] = "mlp"
    hidden_sizes: tuple = (32,)
    learning_rate: float = 1e-2
    epochs: int = 200
    batch_size: int = 32

    def __post_init__(self):
        if isinstance(self.hidden_sizes, int):
            object.__setattr__(self, "hidden_sizes", (self.hidden_sizes,))
        object.__setattr__(self, "hidden_sizes", tuple(self.hidden_sizes))
        if not self.hidden_sizes:
            raise HyperparamError("Invalid hyperparameter hidden_sizes, no hidden layer")
        for size in self.hidden_sizes:
            check_positive("hidden_sizes", size)
        check_positive("learning_rate", self.learning_rate, Real)
        check_positive("epochs", self.epochs)
        check_positive("batch_size", self.batch_size)


def softmax(z):
    """row-wise softmax

    >>> softmax(np.array([[0.0, 0.0]])).tolist()
    [[0.5, 0.5]]
    """
    z = z - np.max(z, axis=1, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=1, keepdims=True)


class MLPClassifier(Model):
    """fully connected network: ReLU hidden layers, softmax output, cross-entropy
    loss, mini-batch gradient descent for a fixed number of epochs

    Weights start uniform in +-sqrt(6 / (fan_in + fan_out)), biases at zero.
    """

    family = "mlp"
    hyperparams_class = MLPHyperparams

    def init_weights(self, n_features_):
        gen = util.rng(self.seed, 0)
        sizes = [n_features_, *self.hp.hidden_sizes, self.n_classes]
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(gen.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))
        self.n_features = n_features_
        return self

    def _forward(self, X):
        """(activations per layer, pre-activations per layer)"""
        acts = [X]
        pre = []
        a = X
        last = len(self.weights) - 1
        for k, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ W + b
            pre.append(z)
            a = np.maximum(z, 0.0) if k < last else z
            acts.append(a)
        return acts, pre

    def logits(self, X):
        X = self._check_input(X)
        return self._forward(X)[0][-1]

    def predict_proba(self, X):
        return softmax(self.logits(X))

    def loss_and_gradients(self, X, y):
        """mean cross-entropy and its gradients [(dW, db), ...] per layer"""
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        n = len(y)
        acts, pre = self._forward(X)
        p = softmax(acts[-1])
        loss = -float(np.mean(np.log(np.maximum(p[np.arange(n), y], 1e-300))))

        delta = p.copy()
        delta[np.arange(n), y] -= 1.0
        delta /= n
        grads = [None] * len(self.weights)
        for k in range(len(self.weights) - 1, -1, -1):
            grads[k] = (acts[k].T @ delta, delta.sum(axis=0))
            if k > 0:
                delta = (delta @ self.weights[k].T) * (pre[k - 1] > 0)
        return loss, grads

    def _fit(self, X, y):
        self.init_weights(X.shape[1])
        gen = util.rng(self.seed, 1)
        lr = float(self.hp.learning_rate)
        n = len(y)
        for epoch in range(self.hp.epochs):
            order = gen.permutation(n)
            for start in range(0, n, self.hp.batch_size):
                batch = order[start : start + self.hp.batch_size]
                _, grads = self.loss_and_gradients(X[batch], y[batch])
                for k, (dW, db) in enumerate(grads):
                    self.weights[k] -= lr * dW
                    self.biases[k] -= lr * db

    def _predict(self, X):
        return np.argmax(self._forward(X)[0][-1], axis=1)

    def get_params(self):
        return {
            "weights": [W.tolist() for W in self.weights],
            "biases": [b.tolist() for b in self.biases],
        }

    def set_params(self, params_):
        self.weights = [np.asarray(W, dtype=float) for W in params_["weights"]]
        self.biases = [np.asarray(b, dtype=float) for b in params_["biases"]]
