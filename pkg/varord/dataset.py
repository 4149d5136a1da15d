#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# dataset.py

"""
    Problem records and datasets: labelling from timings, train/test splits,
    synthetic generation, biased subsampling and file formats.

    Two file formats are read and written, chosen from the file suffix:

    - ``*.jsonl``: one record per line
      {"id", "orbit_id", "perm": [...], "system": "<text>"} with optional
      "timings" (``"inf"`` for +infinity), "label" and "tie".
    - ``*.csv``: header id,orbit_id,perm,f1..f11[,t0..t5],label,tie

    Provenance of a dataset is stored next to the file, in
    ``<file>.provenance.json``.
"""

# --- import -----------------------------------
# import from standard lib
import itertools
import json
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from pathlib import Path

# import from other lib
import numpy as np
import pandas as pd

# import from my project
import varord.util as util
from varord.cadcost import rank_orderings
from varord.errors import (
    ConfigError,
    SampleError,
    SchemaError,
    SplitError,
    TimingsError,
    VarordError,
)
from varord.features import FeatureVector, extract_features, feature_columns
from varord.polysys import (
    Polynomial,
    PolySystem,
    VarPermutation,
    n_orderings,
    parse_system,
    print_system,
)

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

SPLIT_MODES = ("random", "orbit")


# ----------------------------------------------
def label_from_timings(t):
    """cheapest ordering and whether another ordering is as cheap

    :raise TimingsError: if every timing is +inf, or any is negative or NaN

    >>> label_from_timings([5.0, 4.0, 9.9, 7.1, 8.0, 6.0])
    (1, False)
    >>> label_from_timings([3, 3, 3, 3, 3, 3])
    (0, True)
    >>> label_from_timings([math.inf] * 6)
    Traceback (most recent call last):
    ...
    varord.errors.TimingsError: Invalid timings, every ordering timed out
    """
    values = [float(x) for x in t]
    if not values:
        raise TimingsError("Invalid timings, empty")
    if any(math.isnan(x) or x < 0 for x in values):
        raise TimingsError(f"Invalid timings -{values}-, must be >= 0")
    if all(math.isinf(x) for x in values):
        raise TimingsError("Invalid timings, every ordering timed out")
    best = min(values)
    return values.index(best), values.count(best) >= 2


# ----------------------------------------------
@dataclass(frozen=True)
class ProblemRecord(object):
    """one problem, possibly a permuted member of an orbit"""

    id: str
    orbit_id: str
    perm: VarPermutation
    system: PolySystem = None
    features: FeatureVector = None
    timings: tuple = None
    label: int = None
    tie: bool = False

    def __post_init__(self):
        if not self.id:
            raise SchemaError("Invalid record, empty id")
        if self.system is not None and self.system.nvars != len(self.perm):
            raise SchemaError(
                f"record -{self.id}-: permutation length differs from number of variables"
            )
        if self.timings is not None:
            timings = tuple(float(x) for x in self.timings)
            if len(timings) != n_orderings(len(self.perm)):
                raise SchemaError(
                    f"record -{self.id}-: {len(timings)} timings, expected {n_orderings(len(self.perm))}"
                )
            object.__setattr__(self, "timings", timings)
            label, tie = label_from_timings(timings)
            # tied orbit members keep the permuted label of their root
            if self.label is not None and (
                not 0 <= self.label < len(timings) or timings[self.label] != timings[label]
            ):
                raise SchemaError(
                    f"record -{self.id}-: label -{self.label}- is not the cheapest ordering -{label}-"
                )
            if self.label is None:
                object.__setattr__(self, "label", label)
                object.__setattr__(self, "tie", tie)
        if self.label is not None and not 0 <= self.label < n_orderings(len(self.perm)):
            raise SchemaError(f"record -{self.id}-: invalid label -{self.label}-")
        object.__setattr__(self, "tie", bool(self.tie))

    @property
    def nvars(self):
        return len(self.perm)

    @property
    def is_root(self):
        return self.perm.is_identity

    def with_features(self):
        """copy with features computed from the system"""
        if self.system is None:
            raise SchemaError(f"record -{self.id}-: no system to compute features from")
        return replace(self, features=extract_features(self.system))

    def with_timings(self, timings_):
        label, tie = label_from_timings(timings_)
        return replace(self, timings=tuple(timings_), label=label, tie=tie)


@dataclass(frozen=True)
class Dataset(object):
    """ordered collection of records sharing the number of variables"""

    records: tuple = ()
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        records = tuple(self.records)
        seen = set()
        for r in records:
            if r.id in seen:
                raise SchemaError(f"Invalid dataset, duplicate id -{r.id}-")
            seen.add(r.id)
        if len({r.nvars for r in records}) > 1:
            raise SchemaError("Invalid dataset, records differ in number of variables")
        object.__setattr__(self, "records", records)
        object.__setattr__(self, "provenance", dict(self.provenance or {}))

    __hash__ = None

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def nvars(self):
        return self.records[0].nvars if self.records else None

    def ids(self):
        return [r.id for r in self.records]

    def labels(self):
        """labels as an integer array

        :raise SchemaError: if a record is unlabelled
        """
        missing = [r.id for r in self.records if r.label is None]
        if missing:
            raise SchemaError(f"Unlabelled record(s) -{', '.join(missing[:5])}-")
        return np.asarray([r.label for r in self.records], dtype=int)

    def feature_matrix(self):
        """features as a float matrix (systems featurized on the fly)"""
        rows = []
        for r in self.records:
            if r.features is None:
                r = r.with_features()
            rows.append(r.features.values)
        if not rows:
            return np.zeros((0, 0))
        return np.asarray(rows, dtype=float)

    def subset(self, indices_, provenance_=None):
        return Dataset(
            tuple(self.records[i] for i in indices_),
            self.provenance if provenance_ is None else provenance_,
        )


def drop_ties(d):
    return Dataset(tuple(r for r in d if not r.tie), d.provenance)


def with_labels(d):
    return Dataset(tuple(r for r in d if r.label is not None), d.provenance)


def featurize(d):
    """copy of d where every record with a system has its features"""
    return Dataset(
        tuple(r.with_features() if r.system is not None else r for r in d), d.provenance
    )


# --- splits -----------------------------------
@dataclass(frozen=True)
class SplitSpec(object):
    test_fraction: float = 0.2
    seed: int = 0
    mode: str = "random"

    def __post_init__(self):
        if not 0.0 < float(self.test_fraction) < 1.0:
            raise SplitError(f"Invalid test fraction -{self.test_fraction}-, must be in (0, 1)")
        try:
            util.check_seed(self.seed)
        except ValueError as exc:
            raise SplitError(str(exc)) from None
        if self.mode not in SPLIT_MODES:
            raise SplitError(f"Invalid split mode -{self.mode}-, must be one of {SPLIT_MODES}")

    def test_size(self, n_):
        """floor(n * test_fraction), with the fraction read as the decimal it denotes

        >>> SplitSpec(0.2).test_size(6895), SplitSpec(0.29).test_size(100)
        (1379, 29)
        """
        return math.floor(n_ * Fraction(self.test_fraction).limit_denominator(10**9))

    def to_dict(self):
        return asdict(self)


def split(d, spec):
    """partition d into (train, test), records keeping their original order

    random mode: test is a seeded random subset of test_size records.
    orbit mode: whole orbits are drawn in seeded random order, each kept in the test
    side when it brings the test size closer to test_size.
    """
    n = len(d)
    if n < 2:
        raise SplitError(f"Invalid dataset, can not split {n} record(s)")
    target = spec.test_size(n)
    gen = util.rng(spec.seed)

    if spec.mode == "random":
        test_idx = set(int(i) for i in gen.permutation(n)[:target])
    else:
        orbits = {}
        for i, r in enumerate(d.records):
            orbits.setdefault(r.orbit_id, []).append(i)
        members = list(orbits.values())
        test_idx = set()
        for k in gen.permutation(len(members)):
            group = members[int(k)]
            if abs(len(test_idx) + len(group) - target) < abs(len(test_idx) - target):
                test_idx.update(group)
        if len(test_idx) != target:
            _logger.debug(f"orbit split: test size {len(test_idx)} for target {target}")

    provenance = dict(d.provenance, split=spec.to_dict())
    train = d.subset([i for i in range(n) if i not in test_idx], provenance)
    test = d.subset([i for i in range(n) if i in test_idx], provenance)
    _logger.info(f"split -{spec.mode}-: train {len(train)}, test {len(test)}")
    return train, test


def leakage_fraction(train, test):
    """share of test records with an orbit-mate in train"""
    if not len(test):
        return 0.0
    train_orbits = {r.orbit_id for r in train}
    return sum(r.orbit_id in train_orbits for r in test) / len(test)


def unseen(d, train, by_orbit=False):
    """records of d absent from train, matched by id, or by orbit with by_orbit

    >>> from varord.polysys import parse_system
    >>> from varord.augment import augment_dataset
    >>> roots = Dataset(tuple(oracle_record(f"r{k}", parse_system(f"vars 3; x1^{k + 2}*x2 + x3"))
    ...                       for k in range(2)))
    >>> d = augment_dataset(roots)
    >>> len(unseen(d, roots)), len(unseen(d, roots.subset([0]), by_orbit=True))
    (10, 6)
    """
    if by_orbit:
        seen = {r.orbit_id for r in train}
        keep = [i for i, r in enumerate(d) if r.orbit_id not in seen]
    else:
        seen = {r.id for r in train}
        keep = [i for i, r in enumerate(d) if r.id not in seen]
    return d.subset(keep)


# --- synthetic generation ---------------------
@dataclass(frozen=True)
class GeneratorConfig(object):
    """bounds of the synthetic systems (ranges are inclusive)"""

    n_systems: int = 100
    nvars: int = 3
    polys: tuple = (2, 3)
    terms: tuple = (2, 4)
    max_degree: int = 2
    max_total_degree: int = 3
    coeff_bound: int = 99
    allow_ties: bool = False
    max_attempts: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "terms", tuple(self.terms))
        self._check_range("polys", self.polys, 1, 4)
        self._check_range("terms", self.terms, 1, 6)
        for name, value, lo, hi in (
            ("n_systems", self.n_systems, 0, None),
            ("nvars", self.nvars, 1, 5),
            ("max_degree", self.max_degree, 1, 4),
            ("max_total_degree", self.max_total_degree, 1, None),
            ("coeff_bound", self.coeff_bound, 1, 99),
            ("max_attempts", self.max_attempts, 1, None),
        ):
            if isinstance(value, bool) or not isinstance(value, int) or value < lo or (
                hi is not None and value > hi
            ):
                raise ConfigError(f"Invalid generator {name} -{value}-")
        available = self.n_monomials()
        if available < self.terms[1]:
            raise ConfigError(
                f"Invalid generator terms -{self.terms}-: only {available} monomials of "
                f"{self.nvars} variables fit max_degree {self.max_degree} and "
                f"max_total_degree {self.max_total_degree}"
            )

    def n_monomials(self):
        """number of distinct monomials within the degree bounds, 1 included

        >>> GeneratorConfig(nvars=1, terms=(1, 2), max_degree=1, max_total_degree=1).n_monomials()
        2
        >>> GeneratorConfig().n_monomials()
        17
        """
        return sum(
            1
            for mono in itertools.product(range(self.max_degree + 1), repeat=self.nvars)
            if sum(mono) <= self.max_total_degree
        )

    @staticmethod
    def _check_range(name_, range_, lo_, hi_):
        if len(range_) != 2 or not lo_ <= range_[0] <= range_[1] <= hi_:
            raise ConfigError(
                f"Invalid generator {name_} -{range_}-, must be [min, max] within {lo_}..{hi_}"
            )

    def to_dict(self):
        d = asdict(self)
        d["polys"] = list(self.polys)
        d["terms"] = list(self.terms)
        return d

    @classmethod
    def from_dict(cls, dict_):
        unknown = set(dict_) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"Invalid generator key(s) -{sorted(unknown)}-")
        return cls(**dict_)


def _random_poly(gen_, cfg_):
    n_terms = int(gen_.integers(cfg_.terms[0], cfg_.terms[1] + 1))
    terms = {}
    while len(terms) < n_terms:
        mono = tuple(int(e) for e in gen_.integers(0, cfg_.max_degree + 1, size=cfg_.nvars))
        if sum(mono) > cfg_.max_total_degree:
            continue
        coeff = int(gen_.integers(1, cfg_.coeff_bound + 1))
        if gen_.random() < 0.5:
            coeff = -coeff
        terms[mono] = coeff
    return Polynomial(terms, cfg_.nvars)


def _random_system(gen_, cfg_):
    n_polys = int(gen_.integers(cfg_.polys[0], cfg_.polys[1] + 1))
    polys = []
    while len(polys) < n_polys:
        p = _random_poly(gen_, cfg_)
        if not p.is_constant:
            polys.append(p)
    return PolySystem(tuple(polys), cfg_.nvars)


def oracle_record(id_, system_, orbit_id_=None, perm_=None):
    """record labelled by the projection cost oracle"""
    table = rank_orderings(system_)
    return ProblemRecord(
        id=id_,
        orbit_id=orbit_id_ or id_,
        perm=perm_ or VarPermutation.identity(system_.nvars),
        system=system_,
        features=extract_features(system_),
        timings=table.sotd_timings(),
    )


def generate_synthetic(cfg, seed):
    """seeded synthetic orbit roots, labelled by the projection cost oracle

    Every system involves all variables and has no constant polynomial; tied
    systems are redrawn unless cfg.allow_ties.
    """
    util.check_seed(seed)
    records = []
    for i in range(cfg.n_systems):
        gen = util.rng(seed, i)
        for attempt in range(cfg.max_attempts):
            s = _random_system(gen, cfg)
            if set().union(*(p.variables() for p in s.polys)) != set(range(cfg.nvars)):
                continue
            r = oracle_record(f"s{i:05d}", s)
            if r.tie and not cfg.allow_ties:
                continue
            records.append(r)
            break
        else:
            raise SampleError(
                f"Can not draw system {i} within {cfg.max_attempts} attempts; Check generator bounds"
            )
        if (i + 1) % 100 == 0:
            _logger.info(f"generated {i + 1}/{cfg.n_systems} systems")
    provenance = {"source": "synthetic", "seed": int(seed), "generator": cfg.to_dict()}
    return Dataset(tuple(records), provenance)


# --- biased subsampling -----------------------
def _largest_remainder(weights_, size_):
    """integer quotas summing to size_, proportional to weights_

    >>> _largest_remainder([1, 1, 1], 4)
    [2, 1, 1]
    """
    total = sum(Fraction(w) for w in weights_)
    exact = [Fraction(w) / total * size_ for w in weights_]
    quotas = [math.floor(x) for x in exact]
    left = size_ - sum(quotas)
    order = sorted(range(len(exact)), key=lambda k: (-(exact[k] - quotas[k]), k))
    for k in order[:left]:
        quotas[k] += 1
    return quotas


def bias_subsample(d, target, size, seed):
    """stratified sample of d with class proportions given by target

    target holds one non-negative weight per label (normalised to proportions).

    :raise SampleError: if a class holds fewer records than its quota
    """
    util.check_seed(seed)
    labels = d.labels()
    n_labels = n_orderings(d.nvars) if len(d) else len(target)
    weights = [Fraction(w).limit_denominator(10**9) for w in target]
    if len(weights) != n_labels or any(w < 0 for w in weights) or sum(weights) == 0:
        raise SampleError(f"Invalid target -{target}-, expected {n_labels} non-negative weights")
    if isinstance(size, bool) or not isinstance(size, int) or size < 0:
        raise SampleError(f"Invalid sample size -{size}-")

    quotas = _largest_remainder(weights, size)
    chosen = []
    for label, quota in enumerate(quotas):
        pool = np.flatnonzero(labels == label)
        if quota > len(pool):
            raise SampleError(
                f"Not enough records with label {label}: {len(pool)} for a quota of {quota}"
            )
        pick = util.rng(seed, label).choice(len(pool), size=quota, replace=False)
        chosen.extend(int(pool[k]) for k in pick)

    provenance = dict(
        d.provenance,
        bias={"target": [float(w) for w in target], "size": size, "seed": int(seed)},
    )
    _logger.info(f"bias subsample: quotas {quotas}")
    return d.subset(sorted(chosen), provenance)


# --- file formats -----------------------------
def provenance_path(path_):
    path = Path(path_)
    return path.with_name(path.name + ".provenance.json")


def _record_to_json(r_):
    if r_.system is None:
        raise SchemaError(f"record -{r_.id}-: no system, can not write JSON-lines")
    obj = {
        "id": r_.id,
        "orbit_id": r_.orbit_id,
        "perm": list(r_.perm.image),
        "system": print_system(r_.system),
    }
    if r_.timings is not None:
        obj["timings"] = [
            "inf" if math.isinf(x) else x for x in r_.timings
        ]
    if r_.label is not None:
        obj["label"] = r_.label
        obj["tie"] = r_.tie
    return json.dumps(obj, ensure_ascii=False)


def _record_from_json(obj_, row_):
    if not isinstance(obj_, dict):
        raise SchemaError("Invalid record, must be a JSON object", row=row_)
    for key in ("id", "system"):
        if key not in obj_:
            raise SchemaError("missing field", row=row_, column=key)
    rid = str(obj_["id"])
    try:
        system = parse_system(obj_["system"])
    except VarordError as exc:
        raise SchemaError(f"record -{rid}-: {exc}", row=row_, column="system") from exc

    try:
        perm = (
            VarPermutation(tuple(obj_["perm"]))
            if obj_.get("perm") is not None
            else VarPermutation.identity(system.nvars)
        )
        timings = obj_.get("timings")
        if timings is not None:
            timings = tuple(util.text_to_float(x) for x in timings)
        return ProblemRecord(
            id=rid,
            orbit_id=str(obj_.get("orbit_id") or rid),
            perm=perm,
            system=system,
            features=extract_features(system),
            timings=timings,
            label=obj_.get("label"),
            tie=bool(obj_.get("tie", False)),
        )
    except SchemaError as exc:
        raise SchemaError(str(exc), row=row_) from exc
    except (VarordError, TypeError, ValueError) as exc:
        raise SchemaError(f"record -{rid}-: {exc}", row=row_) from exc


def _load_jsonl(path_):
    records = []
    with open(path_, "r", encoding="utf-8") as file:
        for lineno, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"Invalid JSON: {exc.msg}", row=lineno) from exc
            records.append(_record_from_json(obj, lineno))
    return records


def _save_jsonl(d_, path_):
    util.write_text("".join(_record_to_json(r) + "\n" for r in d_), path_)


def _timing_columns(nvars_):
    return [f"t{k}" for k in range(n_orderings(nvars_))]


def _save_csv(d_, path_):
    nvars = d_.nvars or 3
    fcols = feature_columns(nvars)
    tcols = _timing_columns(nvars)
    with_timings = any(r.timings is not None for r in d_)

    rows = []
    for r in d_:
        if r.features is None:
            r = r.with_features()
        row = [r.id, r.orbit_id, r.perm.to_text()]
        row.extend(util.float_to_text(x) for x in r.features.values)
        if with_timings:
            if r.timings is None:
                row.extend([""] * len(tcols))
            else:
                row.extend(util.float_to_text(x) for x in r.timings)
        row.append("" if r.label is None else str(r.label))
        row.append("true" if r.tie else "false")
        rows.append(row)

    columns = ["id", "orbit_id", "perm"] + fcols + (tcols if with_timings else []) + ["label", "tie"]
    df = pd.DataFrame(rows, columns=columns, dtype=str)
    path = Path(path_)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")


def _cell_float(value_, row_, column_):
    try:
        return util.text_to_float(value_)
    except ValueError:
        raise SchemaError(f"Invalid number -{value_}-", row=row_, column=column_) from None


def _load_csv(path_):
    try:
        df = pd.read_csv(path_, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise SchemaError(f"Empty file -{path_}-") from None

    columns = list(df.columns)
    for name in ("id", "orbit_id", "perm", "f1", "label", "tie"):
        if name not in columns:
            raise SchemaError("missing column", column=name)
    n_features = sum(1 for c in columns if c.startswith("f") and c[1:].isdigit())
    if n_features < 5 or (n_features - 2) % 3:
        raise SchemaError(f"Invalid number of feature columns -{n_features}-")
    nvars = (n_features - 2) // 3
    fcols = feature_columns(nvars)
    for name in fcols:
        if name not in columns:
            raise SchemaError("missing column", column=name)
    tcols = _timing_columns(nvars)
    present = [c for c in tcols if c in columns]
    if present and len(present) != len(tcols):
        missing = [c for c in tcols if c not in columns]
        raise SchemaError("incomplete timings block", column=missing[0])

    records = []
    for k, row in enumerate(df.itertuples(index=False)):
        cells = dict(zip(columns, row))
        rowno = k + 2
        try:
            perm = VarPermutation.from_text(cells["perm"])
        except VarordError:
            raise SchemaError(f"Invalid permutation -{cells['perm']}-", row=rowno, column="perm") from None
        features = FeatureVector(tuple(_cell_float(cells[c], rowno, c) for c in fcols))

        timings = None
        if present:
            raw = [cells[c].strip() for c in tcols]
            if any(raw):
                timings = tuple(_cell_float(cells[c], rowno, c) for c in tcols)

        label = cells["label"].strip()
        if label:
            try:
                label = int(label)
            except ValueError:
                raise SchemaError(f"Invalid label -{label}-", row=rowno, column="label") from None
        else:
            label = None
        tie = cells["tie"].strip().lower()
        if tie not in ("true", "false", ""):
            raise SchemaError(f"Invalid tie flag -{tie}-", row=rowno, column="tie")

        try:
            records.append(
                ProblemRecord(
                    id=cells["id"],
                    orbit_id=cells["orbit_id"] or cells["id"],
                    perm=perm,
                    features=features,
                    timings=timings,
                    label=label,
                    tie=tie == "true",
                )
            )
        except VarordError as exc:
            raise SchemaError(str(exc), row=rowno) from exc
    return records


def load_dataset(path):
    """read a dataset (format chosen by suffix) and its provenance sidecar"""
    path = Path(path)
    try:
        if path.suffix == ".jsonl":
            records = _load_jsonl(path)
        elif path.suffix == ".csv":
            records = _load_csv(path)
        else:
            raise SchemaError(f"Invalid dataset file suffix -{path.suffix}-, expected .jsonl or .csv")

        provenance = {}
        if provenance_path(path).is_file():
            provenance = util.read_json(provenance_path(path))
        d = Dataset(tuple(records), provenance)
    except Exception:
        _logger.exception(f"Something goes wrong when loading dataset -{path}-")
        raise  # Throw exception again so calling code knows it happened
    _logger.info(f"load -{path}-: {len(d)} records")
    return d


def save_dataset(d, path):
    """write a dataset (format chosen by suffix) and its provenance sidecar"""
    path = Path(path)
    try:
        if path.suffix == ".jsonl":
            _save_jsonl(d, path)
        elif path.suffix == ".csv":
            _save_csv(d, path)
        else:
            raise SchemaError(f"Invalid dataset file suffix -{path.suffix}-, expected .jsonl or .csv")
        util.write_json(d.provenance, provenance_path(path))
    except Exception:
        _logger.exception(f"Something goes wrong when saving dataset -{path}-")
        raise  # Throw exception again so calling code knows it happened
    _logger.info(f"save -{path}-: {len(d)} records")
    return path
