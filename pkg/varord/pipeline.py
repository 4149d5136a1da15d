#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# pipeline.py

"""
    Commands of the varord command line, and the cross-dataset experiment.

    Every command reads and writes files in the formats of ``varord.dataset`` and
    ``varord.models.store``. The experiment trains each model family on one
    dataset and scores it on the held-out part of that dataset and on the whole
    of the other one, in both directions.
"""

# --- import -----------------------------------
# import from standard lib
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

# import from other lib
import numpy as np
import pandas as pd

# import from my project
import varord.augment as augment
import varord.dataset as dataset
import varord.models as models
import varord.timing as timing
import varord.util as util
from varord.cadcost import rank_orderings
from varord.errors import ConfigError, ExperimentError, SchemaError
from varord.features import fit_scaler
from varord.models.selection import accuracy, confusion_matrix, grid_search
from varord.models.store import load_model, save_model
from varord.polysys import n_orderings

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

SCALER_MODES = ("train", "refit")
REPORT_COLUMNS = (
    "direction",
    "train_dataset",
    "eval_dataset",
    "family",
    "hyperparams",
    "cv_accuracy",
    "train_accuracy",
    "test_accuracy",
    "cross_dataset_accuracy",
)


# --- single stage commands --------------------
def _load(in_):
    """dataset from a path, or the dataset itself"""
    if isinstance(in_, dataset.Dataset):
        return in_
    return dataset.load_dataset(in_)


def cmd_featurize(in_path, out_path):
    """write the features (and timings, labels if any) of every record as CSV"""
    d = dataset.featurize(_load(in_path))
    _logger.info(f"featurize: {len(d)} records")
    return dataset.save_dataset(d, out_path)


def _read_timings(path_, nvars_):
    """{id: timings} from a CSV file with columns id,t0..t(n!-1)"""
    df = pd.read_csv(path_, dtype=str, keep_default_na=False, encoding="utf-8")
    tcols = [f"t{k}" for k in range(n_orderings(nvars_))]
    for name in ["id"] + tcols:
        if name not in df.columns:
            raise SchemaError("missing column", column=name)
    timings = {}
    for k, row in enumerate(df.itertuples(index=False)):
        cells = dict(zip(df.columns, row))
        try:
            timings[cells["id"]] = tuple(util.text_to_float(cells[c]) for c in tcols)
        except ValueError:
            raise SchemaError("Invalid timing", row=k + 2) from None
    return timings


def cmd_label(in_path, out_path, oracle="sotd", timings_path=None):
    """label every record, from the projection cost oracle or measured timings

    :param oracle: 'sotd' to use the oracle, ignored when timings_path is given
    :param timings_path: CSV file id,t0..t5 joined to the records by id
    """
    d = _load(in_path)
    records = []
    if timings_path is not None:
        timings = _read_timings(timings_path, d.nvars or 3)
        missing = [r.id for r in d if r.id not in timings]
        if missing:
            raise SchemaError(f"No timings for record(s) -{', '.join(missing[:5])}-")
        for r in d:
            try:
                records.append(r.with_timings(timings[r.id]))
            except Exception:
                _logger.exception(f"Something goes wrong when labelling record -{r.id}-")
                raise  # Throw exception again so calling code knows it happened
    elif oracle == "sotd":
        for r in d:
            if r.system is None:
                raise SchemaError(f"record -{r.id}-: no system for the oracle")
            records.append(dataset.oracle_record(r.id, r.system, r.orbit_id, r.perm))
    else:
        raise ConfigError(f"Invalid oracle -{oracle}-, expected sotd")

    labelled = dataset.Dataset(
        tuple(records),
        dict(d.provenance, labels="timings" if timings_path is not None else oracle),
    )
    _logger.info(f"label: {len(labelled)} records, {sum(r.tie for r in labelled)} ties")
    return dataset.save_dataset(labelled, out_path)


def distribution_paths(out_path):
    """(csv, json) class distribution files written next to out_path"""
    out = Path(out_path)
    return (
        out.with_name(out.stem + ".distribution.csv"),
        out.with_name(out.stem + ".distribution.json"),
    )


def cmd_augment(in_path, out_path):
    """write the orbits of the roots of the input, and their class distribution"""
    d = _load(in_path)
    aug = augment.augment_dataset(d)
    dataset.save_dataset(aug, out_path)
    dist = augment.class_distribution(aug)
    augment.write_distribution(dist, *distribution_paths(out_path))
    _logger.info(f"augment: {len(d)} roots, {len(aug)} records, counts {dist.counts}")
    return aug


def cmd_split(in_path, train_path, test_path, spec):
    d = _load(in_path)
    train, test = dataset.split(d, spec)
    dataset.save_dataset(train, train_path)
    dataset.save_dataset(test, test_path)
    _logger.info(f"split: leakage {util.fmt(dataset.leakage_fraction(train, test))}")
    return train, test


def cmd_generate(out_path, cfg, seed):
    d = dataset.generate_synthetic(cfg, seed)
    dataset.save_dataset(d, out_path)
    return d


def cmd_rank(in_path, out_path):
    """one JSON line {"id", "costs"} per record, costs holding every ordering's report"""
    d = _load(in_path)
    lines = []
    for r in d:
        if r.system is None:
            raise SchemaError(f"record -{r.id}-: no system to rank")
        table = rank_orderings(r.system)
        lines.append(util.dumps({"id": r.id, "costs": table.to_dict()}, indent=None))
    _logger.info(f"rank: {len(lines)} records")
    return util.write_text("".join(line + "\n" for line in lines), out_path)


def _xy(d_, exclude_ties_=False):
    if exclude_ties_:
        d_ = dataset.drop_ties(d_)
    d_ = dataset.with_labels(d_)
    return d_.feature_matrix(), d_.labels()


def cmd_train(in_path, out_path, family, grid, folds=5, seed=0, exclude_ties=False):
    """grid search one family on the input, then fit and save the best model"""
    X, y = _xy(_load(in_path), exclude_ties)
    scaler = fit_scaler(X)
    S = scaler.transform(X)
    best, _ = grid_search(family, grid, S, y, k=folds, seed=seed)
    m = models.train(family, best, S, y, seed=seed, scaler=scaler)
    save_model(m, out_path)
    return m


def cmd_evaluate(model_path, in_path, out_path=None):
    """accuracy and confusion matrix of a saved model on a labelled dataset"""
    m = load_model(model_path)
    X, y = _xy(_load(in_path))
    if m.scaler is not None:
        X = m.scaler.transform(X)
    result = {
        "model": m.family,
        "hyperparams": m.hp.to_dict(),
        "n": int(len(y)),
        "accuracy": accuracy(m, X, y),
        "confusion_matrix": confusion_matrix(m, X, y).tolist(),
    }
    _logger.info(f"evaluate {m!r}: accuracy {util.fmt(result['accuracy'])} on {len(y)} records")
    if out_path is not None:
        util.write_json(result, out_path)
    return result


# --- experiment -------------------------------
@dataclass(frozen=True)
class ExperimentSettings(object):
    """everything an experiment run depends on besides its datasets

    :param grids: {family: [Hyperparams, ...]}, family defaults when absent
    :param exclude_seen: score the other dataset without the records (or, for
        orbit splits, the orbits) of the training split
    """

    seed: int = 0
    folds: int = 5
    families: tuple = models.FAMILY_ORDER
    grids: dict = field(default=None, compare=False)
    grid_name: str = "default"
    exclude_ties: bool = True
    exclude_seen: bool = False
    persist: bool = False
    scaler: str = "train"
    test_fraction: float = 0.2
    split_mode: str = "random"

    def __post_init__(self):
        util.check_seed(self.seed)
        object.__setattr__(self, "families", tuple(self.families))
        for family in self.families:
            models.get_family(family)
        if isinstance(self.folds, bool) or not isinstance(self.folds, int) or self.folds < 2:
            raise ConfigError(f"Invalid number of folds -{self.folds}-")
        if self.scaler not in SCALER_MODES:
            raise ConfigError(f"Invalid scaler -{self.scaler}-, must be one of {SCALER_MODES}")
        self.split_spec()

    def grid(self, family_):
        if self.grids and family_ in self.grids:
            return list(self.grids[family_])
        return [models.make_hyperparams(family_)]

    def split_spec(self):
        return dataset.SplitSpec(self.test_fraction, self.seed, self.split_mode)

    def to_dict(self):
        return {
            "seed": self.seed,
            "folds": self.folds,
            "families": list(self.families),
            "grid_name": self.grid_name,
            "grids": {f: [hp.to_dict() for hp in self.grid(f)] for f in self.families},
            "exclude_ties": self.exclude_ties,
            "exclude_seen": self.exclude_seen,
            "scaler": self.scaler,
            "split": self.split_spec().to_dict(),
        }

    @classmethod
    def from_config(cls, experiment_, split_, grids_=None):
        """settings from the experiment and split configuration sections

        :param grids_: grids of the parameters file, {name: {family: [...]}}
        """
        grid_name = experiment_.get("grids", "full")
        grids = None
        if grids_ is not None:
            if grid_name not in grids_:
                raise ConfigError(f"Invalid grid -{grid_name}-, must be one of {sorted(grids_)}")
            grids = grids_[grid_name]
        return cls(
            seed=int(experiment_.get("seed", 0)),
            folds=int(experiment_.get("folds", 5)),
            families=tuple(experiment_.get("families") or models.FAMILY_ORDER),
            grids=grids,
            grid_name=grid_name,
            exclude_ties=bool(experiment_.get("exclude_ties", True)),
            exclude_seen=bool(experiment_.get("exclude_seen", False)),
            persist=bool(experiment_.get("persist", False)),
            scaler=experiment_.get("scaler", "train"),
            test_fraction=float(split_.get("test_fraction", 0.2)),
            split_mode=split_.get("mode", "random"),
        )


@dataclass(frozen=True)
class ReportRow(object):
    direction: str
    train_dataset: str
    eval_dataset: str
    family: str
    hyperparams: str
    cv_accuracy: float
    train_accuracy: float
    test_accuracy: float
    cross_dataset_accuracy: float

    def to_dict(self):
        return {c: getattr(self, c) for c in REPORT_COLUMNS}


@dataclass(frozen=True)
class ExperimentReport(object):
    """per direction and family accuracies, plus what is needed to rerun them

    metadata holds the dataset ids and provenance, the settings (seeds, grids,
    split spec), the leakage of each split and the random baseline accuracies.
    """

    rows: tuple
    metadata: dict = field(compare=False)

    def __post_init__(self):
        for row in self.rows:
            for name in ("cv_accuracy", "train_accuracy", "test_accuracy", "cross_dataset_accuracy"):
                if not 0.0 <= getattr(row, name) <= 1.0:
                    raise ExperimentError(f"Invalid {name} -{getattr(row, name)}- for {row.family}")

    def row(self, direction_, family_):
        for r in self.rows:
            if r.direction == direction_ and r.family == family_:
                return r
        raise KeyError((direction_, family_))

    def to_frame(self):
        return pd.DataFrame([r.to_dict() for r in self.rows], columns=list(REPORT_COLUMNS))

    def to_csv(self):
        df = self.to_frame()
        for name in REPORT_COLUMNS[5:]:
            df[name] = df[name].map(util.float_to_text)
        return df.to_csv(index=False, lineterminator="\n")

    def to_markdown(self):
        lines = []
        for direction in self.metadata["directions"]:
            name = direction["name"]
            lines.append(
                f"## Trained on {direction['train']}, evaluated on {direction['train']} "
                f"(test) and {direction['eval']} (all)"
            )
            lines.append("")
            lines.append(
                "| Model | Hyperparameters | Training set | Testing set | "
                f"{direction['eval']} (all) |"
            )
            lines.append("|---|---|---|---|---|")
            for r in self.rows:
                if r.direction != name:
                    continue
                lines.append(
                    f"| {r.family.upper()} | {r.hyperparams} | {util.fmt(r.train_accuracy)} | "
                    f"{util.fmt(r.test_accuracy)} | {util.fmt(r.cross_dataset_accuracy)} |"
                )
            baseline = direction["baseline"]
            lines.append(
                f"| random | - | {util.fmt(baseline['train_accuracy'])} | "
                f"{util.fmt(baseline['test_accuracy'])} | {util.fmt(baseline['cross_dataset_accuracy'])} |"
            )
            lines.append("")
            lines.append(
                f"Split: {direction['split']['mode']}, train {direction['n_train']}, "
                f"test {direction['n_test']}, leakage {util.fmt(direction['leakage'])}; "
                f"{direction['eval']} {direction['n_eval']} records, "
                f"{direction['n_seen']} seen in training left out"
            )
            lines.append("")
        return "\n".join(lines)

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "metadata": self.metadata}

    def write(self, out_dir_):
        out = Path(out_dir_)
        util.write_text(self.to_csv(), out / "report.csv")
        util.write_text(self.to_markdown(), out / "report.md")
        util.write_json(self.to_dict(), out / "report.json")
        _logger.info(f"write report -{out}-")
        return out


def _missing_classes(y_):
    present = set(int(v) for v in np.unique(y_))
    return sorted(set(range(models.N_CLASSES)) - present)


def _direction(name_, train_name_, eval_name_, d_train_, d_eval_, settings_, out_):
    """grid search, train and score every family on one direction"""
    spec = settings_.split_spec()
    train, test = dataset.split(d_train_, spec)
    leakage = dataset.leakage_fraction(train, test)

    d_eval = d_eval_
    if settings_.exclude_seen:
        # orbit splits keep whole orbits out of the evaluation too
        d_eval = dataset.unseen(d_eval_, train, by_orbit=spec.mode == "orbit")
        if not len(d_eval):
            raise ExperimentError(f"every record of {eval_name_} was seen training on {train_name_}")
    n_seen = len(d_eval_) - len(d_eval)
    if n_seen:
        _logger.info(f"{name_}: {n_seen} record(s) of {eval_name_} seen in training, left out")

    X_train, y_train = _xy(train)
    X_test, y_test = _xy(test)
    X_eval, y_eval = _xy(d_eval)
    missing = _missing_classes(y_train)
    if missing:
        raise ExperimentError(f"{train_name_} training split lacks label(s) -{missing}-")

    scaler = fit_scaler(X_train)
    eval_scaler = scaler if settings_.scaler == "train" else fit_scaler(X_eval)
    S_train = scaler.transform(X_train)
    S_test = scaler.transform(X_test)
    S_eval = eval_scaler.transform(X_eval)

    if settings_.persist:
        dataset.save_dataset(train, out_ / "splits" / f"{train_name_}_train.csv")
        dataset.save_dataset(test, out_ / "splits" / f"{train_name_}_test.csv")

    rows = []
    for family in settings_.families:
        _logger.info(f"{name_}: grid search {family}")
        try:
            with timing.timed(f"{name_} {family} grid search"):
                best, table = grid_search(
                    family, settings_.grid(family), S_train, y_train, k=settings_.folds, seed=settings_.seed
                )
            m = models.train(family, best, S_train, y_train, seed=settings_.seed, scaler=scaler)
        except Exception:
            _logger.exception(f"Something goes wrong when training {family} on {train_name_}")
            raise  # Throw exception again so calling code knows it happened
        cv = next(result.mean for hp, result in table if hp is best)
        rows.append(
            ReportRow(
                direction=name_,
                train_dataset=train_name_,
                eval_dataset=eval_name_,
                family=family,
                hyperparams=best.describe(),
                cv_accuracy=cv,
                train_accuracy=accuracy(m, S_train, y_train),
                test_accuracy=accuracy(m, S_test, y_test),
                cross_dataset_accuracy=accuracy(m, S_eval, y_eval),
            )
        )
        _logger.info(
            f"{name_} {family}: train {util.fmt(rows[-1].train_accuracy)}, "
            f"test {util.fmt(rows[-1].test_accuracy)}, {eval_name_} {util.fmt(rows[-1].cross_dataset_accuracy)}"
        )
        if settings_.persist:
            save_model(m, out_ / "models" / f"{train_name_}_{family}.json")

    baseline = models.train("random", None, S_train, y_train, seed=settings_.seed)
    meta = {
        "name": name_,
        "train": train_name_,
        "eval": eval_name_,
        "split": spec.to_dict(),
        "n_train": len(y_train),
        "n_test": len(y_test),
        "n_eval": len(y_eval),
        "n_seen": n_seen,
        "leakage": leakage,
        "baseline": {
            "train_accuracy": accuracy(baseline, S_train, y_train),
            "test_accuracy": accuracy(baseline, S_test, y_test),
            "cross_dataset_accuracy": accuracy(baseline, S_eval, y_eval),
        },
    }
    return rows, meta


def cmd_experiment(dataset_a, dataset_b, out_dir, settings, names=("A", "B")):
    """train on each dataset, score on its test split and on all of the other one

    :param dataset_a: path or Dataset, featurized and labelled
    :param names: dataset ids used in the report
    """
    out = Path(out_dir)
    a = _load(dataset_a)
    b = _load(dataset_b)
    if settings.exclude_ties:
        a, b = dataset.drop_ties(a), dataset.drop_ties(b)
    a, b = dataset.with_labels(a), dataset.with_labels(b)
    name_a, name_b = names

    rows = []
    directions = []
    for name, (train_name, d_train), (eval_name, d_eval) in (
        (f"{name_a}->{name_b}", (name_a, a), (name_b, b)),
        (f"{name_b}->{name_a}", (name_b, b), (name_a, a)),
    ):
        try:
            r, meta = _direction(name, train_name, eval_name, d_train, d_eval, settings, out)
        except Exception:
            _logger.exception(f"Something goes wrong when running direction {name}")
            raise  # Throw exception again so calling code knows it happened
        rows.extend(r)
        directions.append(meta)

    metadata = {
        "datasets": {
            name_a: {"n": len(a), "provenance": a.provenance},
            name_b: {"n": len(b), "provenance": b.provenance},
        },
        "settings": settings.to_dict(),
        "directions": directions,
    }
    report = ExperimentReport(tuple(rows), metadata)
    report.write(out)
    return report


def bias_pattern(report, biased="D1", balanced="D2", min_drop=0.10, max_gap=0.10):
    """per family: drop of the biased-trained model from its test split to the
    balanced dataset, gap of the balanced-trained model to the biased dataset, and
    whether drop >= min_drop and |gap| <= max_gap both hold
    """
    pattern = {}
    for family in report.metadata["settings"]["families"]:
        b = report.row(f"{biased}->{balanced}", family)
        u = report.row(f"{balanced}->{biased}", family)
        drop = b.test_accuracy - b.cross_dataset_accuracy
        gap = u.test_accuracy - u.cross_dataset_accuracy
        pattern[family] = {
            "drop": drop,
            "gap": gap,
            "holds": bool(drop >= min_drop and abs(gap) <= max_gap),
        }
    return pattern


def cmd_repro_bias_study(
    out_dir, seed, settings, generator, n_roots=600, target=None, size=1500, modes=None, exclude_seen=True
):
    """synthetic roots, a biased subsample and the balanced orbit dataset, compared
    by cmd_experiment for each split mode

    D2 is every orbit of the roots (uniform classes). D1 is a stratified sample of
    D2 whose class proportions follow target, so each D1 record is also in D2.
    With exclude_seen the cross-dataset scores leave out what the other side
    trained on, and study.json counts the records left out.
    """
    out = Path(out_dir)
    target = list(target or (580, 900, 1100, 800, 858, 2657))
    modes = list(modes or dataset.SPLIT_MODES)

    cfg = replace(generator, n_systems=int(n_roots), allow_ties=False)
    roots = dataset.generate_synthetic(cfg, seed)
    d2 = augment.augment_dataset(roots)
    d1 = dataset.bias_subsample(d2, target, int(size), seed)
    dataset.save_dataset(d1, out / "D1.jsonl")
    dataset.save_dataset(d2, out / "D2.jsonl")

    summary = {
        "seed": seed,
        "n_roots": int(n_roots),
        "bias": {"target": target, "size": int(size)},
        "exclude_seen": bool(exclude_seen),
    }
    for name, d in (("D1", d1), ("D2", d2)):
        dist = augment.class_distribution(d)
        augment.write_distribution(dist, out / f"{name}.distribution.csv", out / f"{name}.distribution.json")
        summary[name] = dict(dist.to_dict(), imbalance_ratio=augment.imbalance_ratio(dist))

    reports = {}
    summary["modes"] = {}
    for mode in modes:
        _logger.info(f"bias study: split mode {mode}")
        mode_settings = replace(settings, seed=seed, split_mode=mode, exclude_seen=bool(exclude_seen))
        report = cmd_experiment(d1, d2, out / mode, mode_settings, names=("D1", "D2"))
        reports[mode] = report
        summary["modes"][mode] = {
            "leakage": {d["name"]: d["leakage"] for d in report.metadata["directions"]},
            "n_seen": {d["name"]: d["n_seen"] for d in report.metadata["directions"]},
            "pattern": bias_pattern(report),
        }
    util.write_json(summary, out / "study.json")
    return reports


if __name__ == "__main__":
    import doctest

    doctest.testmod(optionflags=doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE)
