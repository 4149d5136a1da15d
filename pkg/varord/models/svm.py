#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# svm.py

"""
    Soft-margin support vector machine, one-vs-rest over the labels.

    Each binary problem is solved by sequential minimal optimisation on the dual,
    picking at every step the pair of multipliers that most violates the
    optimality conditions, and stopping when that violation falls below tol.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from collections import OrderedDict
from dataclasses import dataclass
from numbers import Real
from typing import ClassVar

# import from other lib
import numpy as np

# import from my project
from varord.errors import HyperparamError
from varord.models.model import Hyperparams, Model, check_positive

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

KERNELS = ("rbf", "linear")


@dataclass(frozen=True)
class SVMHyperparams(Hyperparams):
    family: ClassVar[str] = "svm"
    C: float = 1.0
    gamma: object = "scale"
    kernel: str = "rbf"
    tol: float = 1e-3
    max_iter: int = 100000

    def __post_init__(self):
        check_positive("C", self.C, Real)
        if self.gamma != "scale":
            check_positive("gamma", self.gamma, Real)
        if self.kernel not in KERNELS:
            raise HyperparamError(f"Invalid hyperparameter kernel -{self.kernel}-, must be one of {KERNELS}")
        check_positive("tol", self.tol, Real)
        check_positive("max_iter", self.max_iter)


def kernel_matrix(A, B, kernel, gamma):
    """kernel values between the rows of A and the rows of B"""
    if kernel == "linear":
        return A @ B.T
    sq = (
        np.sum(A * A, axis=1)[:, np.newaxis]
        + np.sum(B * B, axis=1)[np.newaxis, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-gamma * np.maximum(sq, 0.0))


class KernelRows(object):
    """rows of the training kernel matrix, precomputed for small training sets,
    computed on demand (with a bounded cache) otherwise"""

    def __init__(self, X, kernel, gamma, full_max=3000, cache_size=1024):
        self._X = X
        self._kernel = kernel
        self._gamma = gamma
        self._cache_size = cache_size
        self._cache = OrderedDict()
        self._full = kernel_matrix(X, X, kernel, gamma) if len(X) <= full_max else None
        if kernel == "linear":
            self.diag = np.sum(X * X, axis=1)
        else:
            self.diag = np.ones(len(X))

    def __getitem__(self, i):
        if self._full is not None:
            return self._full[i]
        row = self._cache.get(i)
        if row is None:
            row = kernel_matrix(self._X[i : i + 1], self._X, self._kernel, self._gamma)[0]
            self._cache[i] = row
            if len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        else:
            self._cache.move_to_end(i)
        return row


def smo(K, y, C, tol, max_iter):
    """dual multipliers and offset of a binary soft-margin problem

    :param K: KernelRows (or kernel matrix) of the training rows
    :param y: labels in {-1, +1}
    :return: (alpha, rho), decision f(x) = sum(alpha * y * k(x_i, x)) - rho
    """
    n = len(y)
    alpha = np.zeros(n)
    G = -np.ones(n)
    diag = K.diag if isinstance(K, KernelRows) else np.diag(K)
    pos = y > 0

    for it in range(max_iter):
        minus_yG = -y * G
        up = (pos & (alpha < C)) | (~pos & (alpha > 0))
        low = (pos & (alpha > 0)) | (~pos & (alpha < C))
        if not up.any() or not low.any():
            break
        i = int(np.argmax(np.where(up, minus_yG, -np.inf)))
        j = int(np.argmin(np.where(low, minus_yG, np.inf)))
        gap = minus_yG[i] - minus_yG[j]
        if gap < tol:
            break

        Ki, Kj = K[i], K[j]
        a = diag[i] + diag[j] - 2.0 * Ki[j]
        if a <= 0:
            a = 1e-12
        t_i = C - alpha[i] if pos[i] else alpha[i]
        t_j = alpha[j] if pos[j] else C - alpha[j]
        t = min(gap / a, t_i, t_j)

        alpha[i] = min(max(alpha[i] + y[i] * t, 0.0), C)
        alpha[j] = min(max(alpha[j] - y[j] * t, 0.0), C)
        G += y * t * (Ki - Kj)
    else:
        _logger.warning(f"smo stopped after max_iter={max_iter} iterations")

    return alpha, _rho(alpha, y, G, C)


def _rho(alpha_, y_, G_, C_):
    yG = y_ * G_
    free = (alpha_ > 0) & (alpha_ < C_)
    if free.any():
        return float(np.mean(yG[free]))
    at_upper = alpha_ >= C_
    pos = y_ > 0
    ub_mask = (at_upper & ~pos) | (~at_upper & pos)
    lb_mask = (at_upper & pos) | (~at_upper & ~pos)
    ub = np.min(yG[ub_mask]) if ub_mask.any() else np.inf
    lb = np.max(yG[lb_mask]) if lb_mask.any() else -np.inf
    if np.isinf(ub):
        return float(lb)
    if np.isinf(lb):
        return float(ub)
    return float((ub + lb) / 2.0)


class SVMClassifier(Model):
    """one binary machine per label present in training; the highest decision
    value wins, lowest label first on ties, absent labels never predicted"""

    family = "svm"
    hyperparams_class = SVMHyperparams

    def _gamma(self, X):
        if self.hp.gamma == "scale":
            var = float(X.var())
            return 1.0 / (X.shape[1] * var) if var > 0 else 1.0
        return float(self.hp.gamma)

    def _fit(self, X, y):
        self.gamma_ = self._gamma(X)
        K = KernelRows(X, self.hp.kernel, self.gamma_)
        self.classes_ = sorted(int(c) for c in np.unique(y))

        coef = []
        rho = []
        for c in self.classes_:
            yc = np.where(y == c, 1.0, -1.0)
            alpha, r = smo(K, yc, float(self.hp.C), float(self.hp.tol), self.hp.max_iter)
            coef.append(alpha * yc)
            rho.append(r)
        coef = np.asarray(coef)

        support = np.flatnonzero(np.any(coef != 0.0, axis=0))
        self.support_vectors_ = X[support]
        self.dual_coef_ = coef[:, support]
        self.rho_ = np.asarray(rho)

    def decision_function(self, X):
        """n_rows x n_classes decision values, -inf for labels absent in training"""
        X = self._check_input(X)
        scores = np.full((len(X), self.n_classes), -np.inf)
        if len(self.support_vectors_):
            K = kernel_matrix(X, self.support_vectors_, self.hp.kernel, self.gamma_)
            values = K @ self.dual_coef_.T - self.rho_
        else:
            values = np.zeros((len(X), len(self.classes_))) - self.rho_
        scores[:, self.classes_] = values
        return scores

    def _predict(self, X):
        return np.argmax(self.decision_function(X), axis=1)

    def get_params(self):
        return {
            "classes": list(self.classes_),
            "gamma": self.gamma_,
            "support_vectors": self.support_vectors_.tolist(),
            "dual_coef": self.dual_coef_.tolist(),
            "rho": self.rho_.tolist(),
        }

    def set_params(self, params_):
        self.classes_ = [int(c) for c in params_["classes"]]
        self.gamma_ = float(params_["gamma"])
        self.support_vectors_ = np.asarray(params_["support_vectors"], dtype=float).reshape(
            -1, self.n_features
        )
        self.dual_coef_ = np.asarray(params_["dual_coef"], dtype=float).reshape(
            len(self.classes_), -1
        )
        self.rho_ = np.asarray(params_["rho"], dtype=float)
