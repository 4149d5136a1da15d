#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# parameters.py

"""
    Hyperparameter grids, read from the parameters file (``extra.parameters``).

    The file holds one mapping per grid name (``full``, ``quick``), each giving,
    per model family, the list of values tried for every hyperparameter:

    .. code-block:: yaml

        grids:
            quick:
                knn:
                    k: [1, 5, 11]

    A family's grid is the cartesian product of its value lists, taken in the
    order the hyperparameters are declared by the family. Families without an
    entry get their default hyperparameters only.
"""

# ----------------------------------------------
# import from standard lib
import itertools
import logging
from dataclasses import fields
from pprint import pformat

# import from other lib
import yaml

# import from my project
import varord.models as models
import varord.setupcfg as setupcfg
from varord.errors import ConfigError, HyperparamError

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

GRID_NAMES = ("full", "quick")


# ----------------------------------------------
def _get_list(list_=None):
    """get list from yaml file element"""
    if not isinstance(list_, list):
        if list_ is None:
            _ = []
        else:
            _ = [list_]
    else:
        _ = list_

    return _


def _check_param_family(family_, dict_, where_):
    """expand one family's value lists into a list of hyperparameters

    >>> [hp.k for hp in _check_param_family("knn", {"k": [1, 3]}, "quick")]
    [1, 3]
    """
    try:
        cls = models.get_family(family_).hyperparams_class
    except ConfigError:
        raise ConfigError(f"Invalid family -{family_}- in grid {where_}") from None

    if dict_ is None:
        return [cls()]
    if not isinstance(dict_, dict):
        raise ConfigError(f"Invalid grid {where_}.{family_} -{dict_}-, must be a mapping")

    names = [f.name for f in fields(cls)]
    unknown = sorted(set(dict_) - set(names))
    if unknown:
        raise ConfigError(f"Invalid hyperparameter(s) -{unknown}- in grid {where_}.{family_}")

    keys = [n for n in names if n in dict_]
    values = []
    for key in keys:
        _ = _get_list(dict_[key])
        if not _:
            raise ConfigError(f"Invalid grid {where_}.{family_}.{key}, no value")
        values.append(_)

    grid = []
    for combination in itertools.product(*values):
        try:
            grid.append(cls(**dict(zip(keys, combination))))
        except (HyperparamError, TypeError) as exc:
            raise ConfigError(f"Invalid grid {where_}.{family_}: {exc}") from None
    return grid


def _check_param_grids(dict_=None):
    """ """
    # default grids: family defaults only
    _ = {name: {f: [models.make_hyperparams(f)] for f in models.families()} for name in GRID_NAMES}

    if dict_ is None:
        return _
    if not isinstance(dict_, dict):
        raise ConfigError(f"Invalid grids -{dict_}-, must be a mapping")

    for name, families in dict_.items():
        if families is None:
            families = {}
        if not isinstance(families, dict):
            raise ConfigError(f"Invalid grid {name} -{families}-, must be a mapping")
        grids = {f: [models.make_hyperparams(f)] for f in models.families()}
        for family, values in families.items():
            grids[family] = _check_param_family(family, values, name)
        _[name] = grids

    return _


def _check_param(dict_):
    """
    check dictionary elements and reformat if need be

    :return: dictionary reformat
    """
    # default empty dictionary
    _ = {}

    if dict_ is None:
        dict_ = {}
    if not isinstance(dict_, dict):
        raise ConfigError(f"Invalid parameters -{dict_}-, must be a mapping")

    _["grids"] = _check_param_grids(dict_.get("grids"))

    return _


def show(param_):
    """ """
    print(
        "parameters:\n "
        + pformat(
            {
                name: {f: [hp.describe() for hp in grid] for f, grid in grids.items()}
                for name, grids in param_["grids"].items()
            }
        )
    )


def load(path_):
    """read and check a parameters file"""
    try:
        with open(path_, "r", encoding="utf-8") as stream:
            try:
                param = yaml.safe_load(stream)
            except yaml.YAMLError as exc:
                raise ConfigError(f"Invalid parameters file -{path_}-: {exc}") from exc

        return _check_param(param)

    except Exception:
        _logger.exception(f"Something goes wrong when loading extra parameters file -{path_}-.")
        raise  # Throw exception again so calling code knows it happened


def main():
    """load the parameters file found by setupcfg"""
    return load(setupcfg.extraParam)


if __name__ == "__main__":
    import doctest

    doctest.testmod(optionflags=doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE)
