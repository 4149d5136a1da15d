#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# store.py

"""
    Model files: versioned JSON holding the family tag, hyperparameters, learned
    parameters, scaler and seed.
"""

# --- import -----------------------------------
# import from standard lib
import json
import logging

# import from other lib
# import from my project
import varord.models as models
import varord.util as util
from varord.errors import ModelError, ModelVersionError, VarordError
from varord.features import Scaler

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def model_to_dict(m):
    return {
        "schema_version": SCHEMA_VERSION,
        "family": m.family,
        "hyperparams": m.hp.to_dict(),
        "seed": m.seed,
        "n_classes": m.n_classes,
        "n_features": m.n_features,
        "scaler": None if m.scaler is None else m.scaler.to_dict(),
        "params": m.get_params(),
    }


def model_from_dict(dict_):
    if not isinstance(dict_, dict):
        raise ModelError("Invalid model, not a JSON object")
    version = dict_.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ModelVersionError(
            f"Invalid model schema version -{version}-, expected {SCHEMA_VERSION}"
        )
    try:
        cls = models.get_family(dict_["family"])
        hp = cls.hyperparams_class.from_dict(dict_["hyperparams"])
        m = cls(hp, seed=dict_["seed"], n_classes=dict_["n_classes"])
        m.n_features = int(dict_["n_features"])
        m.set_params(dict_["params"])
        if dict_.get("scaler") is not None:
            m.scaler = Scaler.from_dict(dict_["scaler"])
    except (KeyError, TypeError, ValueError, VarordError) as exc:
        raise ModelError(f"Invalid model file content: {exc}") from exc
    return m


def save_model(m, path):
    if not m.is_trained:
        raise ModelError(f"{m.family} model is not trained")
    util.write_json(model_to_dict(m), path)
    _logger.info(f"save model -{path}-")


def load_model(path):
    try:
        with open(path, "r", encoding="utf-8") as file:
            content = json.load(file)
    except json.JSONDecodeError as exc:
        raise ModelError(f"Corrupt model file -{path}-: {exc.msg}") from exc
    m = model_from_dict(content)
    _logger.info(f"load model -{path}-: {m!r}")
    return m
