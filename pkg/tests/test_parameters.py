"""Tests of the hyperparameter grid file."""
from pathlib import Path

import pytest

import varord
from varord import parameters
from varord.errors import ConfigError
from varord.models.knn import KNNHyperparams
from varord.models.mlp import MLPHyperparams
from varord.models.svm import SVMHyperparams
from varord.models.tree import TreeHyperparams

DEFAULT_FILE = Path(varord.__file__).parent / "cfg" / "parameters.yaml"


def write(tmp_path, text):
    path = tmp_path / "parameters.yaml"
    path.write_text(text)
    return path


def test_default_file_grid_sizes():
    grids = parameters.load(DEFAULT_FILE)["grids"]
    assert {f: len(g) for f, g in grids["full"].items()} == {"svm": 32, "knn": 6, "dt": 15, "rf": 6, "mlp": 6}
    assert {f: len(g) for f, g in grids["quick"].items()} == {"svm": 2, "knn": 3, "dt": 2, "rf": 1, "mlp": 1}


def test_default_file_values():
    quick = parameters.load(DEFAULT_FILE)["grids"]["quick"]
    assert quick["knn"] == [KNNHyperparams(k=1), KNNHyperparams(k=5), KNNHyperparams(k=11)]
    assert quick["dt"] == [TreeHyperparams(max_depth=5), TreeHyperparams(max_depth=None)]
    assert quick["mlp"] == [MLPHyperparams(hidden_sizes=(32,), epochs=50)]


def test_product_follows_declaration_order(tmp_path):
    path = write(tmp_path, "grids:\n  quick:\n    svm:\n      kernel: [rbf, linear]\n      C: [1, 10]\n")
    grid = parameters.load(path)["grids"]["quick"]["svm"]
    assert grid == [
        SVMHyperparams(C=1, kernel="rbf"),
        SVMHyperparams(C=1, kernel="linear"),
        SVMHyperparams(C=10, kernel="rbf"),
        SVMHyperparams(C=10, kernel="linear"),
    ]


def test_scalar_value_and_missing_family(tmp_path):
    grids = parameters.load(write(tmp_path, "grids:\n  quick:\n    knn:\n      k: 7\n"))["grids"]
    assert grids["quick"]["knn"] == [KNNHyperparams(k=7)]
    assert grids["quick"]["dt"] == [TreeHyperparams()]
    assert grids["full"]["knn"] == [KNNHyperparams()]


def test_empty_file(tmp_path):
    grids = parameters.load(write(tmp_path, ""))["grids"]
    assert sorted(grids) == ["full", "quick"]


@pytest.mark.parametrize(
    "text",
    [
        "grids:\n  quick:\n    xgboost:\n      depth: [1]\n",
        "grids:\n  quick:\n    knn:\n      p: [1]\n",
        "grids:\n  quick:\n    knn:\n      k: []\n",
        "grids:\n  quick:\n    knn:\n      k: [0]\n",
        "grids:\n  quick:\n    knn: [1, 2]\n",
        "grids: [quick]\n",
        "grids:\n  quick: [knn]\n",
        "grids:\n  quick:\n    knn:\n      k: [1\n",
    ],
)
def test_invalid_file(tmp_path, text):
    with pytest.raises(ConfigError):
        parameters.load(write(tmp_path, text))


def test_show(capsys):
    parameters.show(parameters.load(DEFAULT_FILE))
    assert "k=11" in capsys.readouterr().out
