#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# augment.py

"""
    Orbit augmentation: a problem renamed by a variable permutation, together with
    its ordering renamed the same way, costs exactly the same. Every orbit root
    therefore yields one record per permutation, with timings and label moved
    accordingly.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass, replace

# import from other lib
import pandas as pd

# import from my project
import varord.util as util
from varord.dataset import Dataset
from varord.errors import AugmentError
from varord.features import extract_features
from varord.polysys import all_permutations, apply_permutation, n_orderings, permute_label

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

ORBIT_NVARS = 3


# ----------------------------------------------
def _permuted_timings(timings_, perm_):
    new = [0.0] * len(timings_)
    for label, t in enumerate(timings_):
        new[permute_label(label, perm_)] = t
    return tuple(new)


def orbit(r):
    """the records of r renamed by every permutation, in lexicographic order

    The identity member is r itself; the member of the k-th permutation gets
    the id "<root id>#k".

    :raise AugmentError: if r is not an orbit root, or not over 3 variables
    """
    if not r.is_root:
        raise AugmentError(f"record -{r.id}- is not an orbit root (perm {r.perm.image})")
    if r.nvars != ORBIT_NVARS:
        raise AugmentError(f"record -{r.id}-: {r.nvars} variables, orbits need {ORBIT_NVARS}")

    members = []
    for k, perm in enumerate(all_permutations(r.nvars)):
        if perm.is_identity:
            members.append(r)
            continue
        system = None if r.system is None else apply_permutation(r.system, perm)
        if system is not None:
            features = extract_features(system)
        elif r.features is not None:
            features = r.features.permuted(perm)
        else:
            features = None
        members.append(
            replace(
                r,
                id=f"{r.id}#{k}",
                orbit_id=r.orbit_id,
                perm=perm,
                system=system,
                features=features,
                timings=None if r.timings is None else _permuted_timings(r.timings, perm),
                label=None if r.label is None else permute_label(r.label, perm),
                tie=r.tie,
            )
        )
    return members


def augment_dataset(d):
    """concatenation of the orbits of every root of d, without deduplication"""
    non_roots = [r.id for r in d if not r.is_root]
    if non_roots:
        raise AugmentError(f"Non root record(s) -{', '.join(non_roots[:5])}-")
    records = []
    for r in d:
        records.extend(orbit(r))
    _logger.info(f"augment: {len(d)} roots -> {len(records)} records")
    return Dataset(tuple(records), dict(d.provenance, augmented=True))


def roots(d):
    """orbit roots of d, in dataset order"""
    return Dataset(tuple(r for r in d if r.is_root), d.provenance)


# --- class distribution -----------------------
@dataclass(frozen=True)
class ClassDistribution(object):
    counts: tuple
    total: int

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if self.total != sum(self.counts):
            raise ValueError("Invalid distribution, total differs from counts sum")

    def to_dict(self):
        return {"counts": list(self.counts), "total": self.total}


def class_distribution(d, n_labels=None):
    """per label counts of the labelled records of d

    >>> class_distribution(Dataset()).counts
    (0, 0, 0, 0, 0, 0)
    """
    if n_labels is None:
        n_labels = n_orderings(d.nvars or ORBIT_NVARS)
    counts = [0] * n_labels
    for r in d:
        if r.label is not None:
            counts[r.label] += 1
    return ClassDistribution(tuple(counts), sum(counts))


def imbalance_ratio(dist):
    """largest over smallest class count

    >>> imbalance_ratio(ClassDistribution((1, 1, 1, 1, 1, 2), 7))
    2.0
    """
    if not dist.counts or min(dist.counts) <= 0:
        raise AugmentError(f"Invalid distribution -{dist.counts}-, every class must be present")
    return max(dist.counts) / min(dist.counts)


def write_distribution(dist, csv_path, json_path=None):
    """label,count CSV and a JSON summary including the imbalance ratio"""
    df = pd.DataFrame({"label": range(len(dist.counts)), "count": dist.counts})
    util.write_text(df.to_csv(index=False, lineterminator="\n"), csv_path)
    if json_path is not None:
        try:
            ratio = imbalance_ratio(dist)
        except AugmentError:
            ratio = None
        util.write_json(dict(dist.to_dict(), imbalance_ratio=ratio), json_path)
