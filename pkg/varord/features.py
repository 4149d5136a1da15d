#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# features.py

"""
    Per-system feature vector, and the standardisation fitted on training rows.

    For n variables the vector holds 2 + 3n values:

        num_polys, max_total_degree,
        maxdeg_x1..maxdeg_xn,      largest exponent of each variable
        polyprop_x1..polyprop_xn,  share of polynomials involving each variable
        monoprop_x1..monoprop_xn,  share of monomials (constants included) involving each variable
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass

# import from other lib
import numpy as np

# import from my project

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

# std below this is treated as a constant column
STD_EPS = 1e-12


def feature_names(nvars=3):
    """descriptive name of each feature

    >>> feature_names(2)
    ['num_polys', 'max_total_degree', 'maxdeg_x1', 'maxdeg_x2',
     'polyprop_x1', 'polyprop_x2', 'monoprop_x1', 'monoprop_x2']
    """
    names = ["num_polys", "max_total_degree"]
    for prefix in ("maxdeg", "polyprop", "monoprop"):
        names.extend(f"{prefix}_x{i + 1}" for i in range(nvars))
    return names


def feature_columns(nvars=3):
    """CSV column names f1..f(2+3n)"""
    return [f"f{k + 1}" for k in range(2 + 3 * nvars)]


FEATURE_NAMES = tuple(feature_names(3))
FEATURE_COLUMNS = tuple(feature_columns(3))


# ----------------------------------------------
@dataclass(frozen=True)
class FeatureVector(object):
    values: tuple

    def __post_init__(self):
        values = tuple(float(x) for x in self.values)
        if len(values) < 5 or (len(values) - 2) % 3:
            raise ValueError(f"Invalid feature vector length -{len(values)}-")
        object.__setattr__(self, "values", values)

    @property
    def nvars(self):
        return (len(self.values) - 2) // 3

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self):
        return np.asarray(self.values, dtype=float)

    def permuted(self, perm):
        """features of the system renamed by perm: each per-variable triplet is
        permuted, the first two entries are kept

        >>> from varord.polysys import VarPermutation
        >>> v = FeatureVector((2, 3, 2, 1, 0, 1, .5, 0, .5, .25, 0))
        >>> v.permuted(VarPermutation((2, 0, 1))).values
        (2.0, 3.0, 1.0, 0.0, 2.0, 0.5, 0.0, 1.0, 0.25, 0.0, 0.5)
        """
        n = self.nvars
        if len(perm) != n:
            raise ValueError(f"Invalid permutation length -{len(perm)}-, expected {n}")
        values = list(self.values)
        for block in range(3):
            start = 2 + block * n
            old = self.values[start : start + n]
            for i in range(n):
                values[start + perm(i)] = old[i]
        return FeatureVector(tuple(values))


def extract_features(s):
    """feature vector of a polynomial system

    >>> from varord.polysys import parse_system
    >>> extract_features(parse_system("vars 3; x1^2*x2 - 1; x1 + x3")).values
    (2.0, 3.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, 0.5, 0.25, 0.25)
    """
    polys = s.polys
    n = s.nvars
    num_polys = len(polys)

    max_total = max(p.total_degree() for p in polys)
    maxdeg = [max(p.degree_in(v) for p in polys) for v in range(n)]
    poly_count = [0] * n
    mono_count = [0] * n
    n_terms = 0
    for p in polys:
        present = set(p.variables())
        for v in present:
            poly_count[v] += 1
        for mono, _ in p.terms:
            n_terms += 1
            for v in range(n):
                if mono[v]:
                    mono_count[v] += 1

    values = [num_polys, max_total]
    values.extend(maxdeg)
    values.extend(c / num_polys for c in poly_count)
    values.extend(c / n_terms for c in mono_count)
    return FeatureVector(tuple(values))


# ----------------------------------------------
@dataclass(frozen=True)
class Scaler(object):
    """per column mean and population standard deviation"""

    means: tuple
    stds: tuple

    def __post_init__(self):
        means = tuple(float(x) for x in self.means)
        stds = tuple(float(x) for x in self.stds)
        if len(means) != len(stds):
            raise ValueError("Invalid scaler, means and stds differ in length")
        if any(not sd >= 0 for sd in stds):
            raise ValueError(f"Invalid scaler, negative std -{stds}-")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)

    @classmethod
    def identity(cls, dim):
        return cls((0.0,) * dim, (1.0,) * dim)

    def __len__(self):
        return len(self.means)

    def transform(self, x_):
        """standardise a matrix (rows) or a single row, std 0 acting as 1"""
        x = np.asarray(x_, dtype=float)
        if x.shape[-1] != len(self.means):
            raise ValueError(
                f"Invalid dimension -{x.shape[-1]}-, scaler expects {len(self.means)}"
            )
        stds = np.asarray(self.stds)
        stds = np.where(stds == 0.0, 1.0, stds)
        return (x - np.asarray(self.means)) / stds

    def to_dict(self):
        return {"means": list(self.means), "stds": list(self.stds)}

    @classmethod
    def from_dict(cls, dict_):
        return cls(tuple(dict_["means"]), tuple(dict_["stds"]))


def fit_scaler(rows):
    """fit mean and population std per column

    >>> sc = fit_scaler([[1.0], [2.0], [3.0]])
    >>> sc.means, round(sc.stds[0] ** 2, 12)
    ((2.0,), 0.666666666667)
    """
    x = np.asarray([list(r) for r in rows], dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("Invalid input, can not fit a scaler on no rows")
    means = x.mean(axis=0)
    stds = x.std(axis=0)
    stds = np.where(stds < STD_EPS, 0.0, stds)
    return Scaler(tuple(means.tolist()), tuple(stds.tolist()))


def apply_scaler(sc, v):
    """standardised copy of a feature vector"""
    values = v.values if isinstance(v, FeatureVector) else tuple(v)
    if len(values) != len(sc):
        raise ValueError(f"Invalid dimension -{len(values)}-, scaler expects {len(sc)}")
    return FeatureVector(tuple(sc.transform(values).tolist()))
