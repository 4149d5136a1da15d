"""
    Classifier families.

    Every module of this package is imported, and each Model subclass carrying a
    family tag is registered under that tag.
"""
# from https://julienharbulot.com/python-dynamical-import.html
from importlib import import_module
from inspect import isclass
from pathlib import Path
from pkgutil import iter_modules

import numpy as np

from varord.errors import ConfigError
from varord.models.model import N_CLASSES, Hyperparams, Model

# reporting order of the families
FAMILY_ORDER = ("svm", "knn", "dt", "rf", "mlp")

_registry = {}


def families(include_baseline=False):
    """registered family tags, in reporting order"""
    known = [f for f in FAMILY_ORDER if f in _registry]
    known += sorted(f for f in _registry if f not in FAMILY_ORDER and f != "random")
    if include_baseline and "random" in _registry:
        known.append("random")
    return tuple(known)


def get_family(name):
    """Model class registered under name"""
    try:
        return _registry[name]
    except KeyError:
        raise ConfigError(
            f"Invalid model family -{name}-, must be one of {families(True)}"
        ) from None


def make_hyperparams(family, **kwargs):
    return get_family(family).hyperparams_class(**kwargs)


def train(family, hp, X, y, seed=0, scaler=None):
    """fit a model of the given family

    :param X: scaled feature rows
    :param scaler: scaler X was standardised with, kept with the model
    """
    model = get_family(family)(hp, seed=seed, n_classes=N_CLASSES)
    model.fit(X, y)
    model.scaler = scaler
    return model


def predict(model, v):
    """label of one scaled feature vector"""
    return model.predict_one(np.asarray(tuple(v), dtype=float))


# load family modules
package_dir = Path(__file__).resolve().parent
for (_, module_name, _) in iter_modules([str(package_dir)]):
    module = import_module(f"{__name__}.{module_name}")
    # Add the module to this package's variables
    globals()[module_name] = module

    for attribute_name in dir(module):
        attribute = getattr(module, attribute_name)

        if isclass(attribute) and issubclass(attribute, Model) and attribute.family:
            _registry[attribute.family] = attribute
