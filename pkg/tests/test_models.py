"""Tests of the classifier families, model selection and model files."""
import json

import numpy as np
import pytest
from conftest import blobs

import varord.models as models
from varord.errors import ConfigError, HyperparamError, ModelError, ModelVersionError
from varord.features import fit_scaler
from varord.models.forest import ForestHyperparams, RandomForestClassifier
from varord.models.knn import KNNHyperparams
from varord.models.mlp import MLPClassifier, MLPHyperparams, softmax
from varord.models.selection import (
    accuracy,
    confusion_matrix,
    cross_validate,
    grid_search,
    kfold_indices,
)
from varord.models.store import load_model, model_from_dict, model_to_dict, save_model
from varord.models.svm import SVMHyperparams
from varord.models.tree import DecisionTreeClassifier, TreeHyperparams

SMALL_HP = {
    "svm": {"C": 10.0},
    "knn": {"k": 3},
    "dt": {"max_depth": 6},
    "rf": {"n_trees": 5},
    "mlp": {"hidden_sizes": (8,), "epochs": 5},
}


# --- registry ---------------------------------
def test_families():
    assert models.families() == ("svm", "knn", "dt", "rf", "mlp")
    assert models.families(include_baseline=True)[-1] == "random"


def test_unknown_family():
    with pytest.raises(ConfigError):
        models.get_family("xgboost")


def test_make_hyperparams():
    assert models.make_hyperparams("knn", k=3) == KNNHyperparams(k=3)
    with pytest.raises(HyperparamError):
        models.make_hyperparams("knn", k=0)
    with pytest.raises(HyperparamError):
        models.make_hyperparams("rf", max_features="log2")
    with pytest.raises(HyperparamError):
        models.make_hyperparams("svm", kernel="poly")
    with pytest.raises(HyperparamError):
        models.make_hyperparams("mlp", hidden_sizes=())


def test_hyperparams_dict():
    hp = MLPHyperparams(hidden_sizes=[16, 8])
    assert hp.hidden_sizes == (16, 8)
    assert hp.to_dict()["hidden_sizes"] == [16, 8]
    assert MLPHyperparams.from_dict(hp.to_dict()) == hp
    assert hp.describe() == "hidden_sizes=(16,8) learning_rate=0.01 epochs=200 batch_size=32"
    with pytest.raises(HyperparamError):
        MLPHyperparams.from_dict({"family": "knn", "k": 3})
    with pytest.raises(HyperparamError):
        KNNHyperparams.from_dict({"k": 3, "p": 2})


def test_model_input_checks():
    X, y = blobs(5)
    m = models.get_family("knn")()
    with pytest.raises(ModelError):
        m.predict(X)
    with pytest.raises(ModelError):
        m.fit(X, y + 6)
    with pytest.raises(ModelError):
        m.fit(X, y[:-1])
    m.fit(X, y)
    with pytest.raises(ModelError):
        m.predict(np.zeros((1, 3)))


# --- families ---------------------------------
def test_knn_nearest():
    X = np.array([[0.0], [1.0], [10.0]])
    m = models.train("knn", KNNHyperparams(k=1), X, [0, 0, 1])
    assert m.predict([[0.2], [9.0]]).tolist() == [0, 1]
    m = models.train("knn", KNNHyperparams(k=3), X, [0, 0, 1])
    assert m.predict([[9.0]]).tolist() == [0]


def test_knn_vote_tie_lowest_label():
    X = np.array([[0.0], [1.0]])
    m = models.train("knn", KNNHyperparams(k=2), X, [3, 1])
    assert m.predict_one([0.5]) == 1


def test_knn_k_larger_than_training_set():
    m = models.train("knn", KNNHyperparams(k=50), np.array([[0.0], [1.0], [2.0]]), [2, 2, 0])
    assert m.predict_one([2.0]) == 2


def test_tree_fits_training_set():
    X, y = blobs(30, n_classes=3, spread=4.0)
    m = models.train("dt", TreeHyperparams(), X, y)
    assert accuracy(m, X, y) == 1.0


def test_tree_depth_limit():
    X, y = blobs(30, n_classes=3, spread=4.0)
    assert models.train("dt", TreeHyperparams(max_depth=1), X, y).n_nodes == 3


def test_tree_structure_invariant_under_monotone_transform():
    X, y = blobs(25, n_classes=3, spread=4.0, seed=5)
    m1 = models.train("dt", TreeHyperparams(), X, y)
    m2 = models.train("dt", TreeHyperparams(), 3.0 * X + 1.0, y)
    assert m1.structure() == m2.structure()


def test_tree_constant_features_give_leaf():
    m = models.train("dt", TreeHyperparams(), np.ones((4, 2)), [0, 1, 1, 1])
    assert m.n_nodes == 1
    assert m.predict_one([5.0, 5.0]) == 1


def test_forest_of_identical_trees():
    X, y = blobs(20, n_classes=3, spread=3.0)
    tree = models.train("dt", TreeHyperparams(), X, y)
    forest = RandomForestClassifier.from_trees([tree] * 7)
    probe = np.random.default_rng(0).normal(scale=10.0, size=(200, 2))
    assert forest.predict(probe).tolist() == tree.predict(probe).tolist()


def test_forest_size_and_determinism():
    X, y = blobs(20, n_classes=3, spread=3.0)
    a = models.train("rf", ForestHyperparams(n_trees=9), X, y, seed=4)
    b = models.train("rf", ForestHyperparams(n_trees=9), X, y, seed=4)
    assert len(a.trees) == 9
    assert [t.structure() for t in a.trees] == [t.structure() for t in b.trees]
    assert accuracy(a, X, y) >= 0.9


def test_svm_margins():
    X, y = blobs(20, spread=1.0, distance=8.0)
    m = models.train("svm", SVMHyperparams(C=100.0, kernel="linear"), X, y)
    signs = np.where(y == 1, 1.0, -1.0)
    margins = signs * m.decision_function(X)[:, 1]
    assert margins.min() >= 1 - 1e-2
    assert accuracy(m, X, y) == 1.0


def test_svm_rbf_multiclass():
    X, y = blobs(20, n_classes=4, spread=1.0)
    m = models.train("svm", SVMHyperparams(C=10.0, gamma=0.05), X, y)
    assert accuracy(m, X, y) >= 0.95
    scores = m.decision_function(X[:3])
    assert np.all(np.isneginf(scores[:, 4:]))


def test_mlp_learns_blobs():
    X, y = blobs(50, n_classes=3, spread=1.0)
    X = fit_scaler(X).transform(X)
    m = models.train("mlp", MLPHyperparams(learning_rate=0.1, epochs=300), X, y, seed=1)
    assert accuracy(m, X, y) >= 0.95


def test_mlp_probabilities():
    X, y = blobs(10, n_classes=3)
    m = models.train("mlp", MLPHyperparams(epochs=3), X, y)
    proba = m.predict_proba(X)
    assert proba.shape == (30, 6)
    assert np.allclose(proba.sum(axis=1), 1.0)
    assert np.array_equal(np.argmax(proba, axis=1), m.predict(X))
    assert np.allclose(softmax(np.array([[1000.0, 1000.0]])), 0.5)


def test_mlp_gradients_match_finite_differences():
    gen = np.random.default_rng(3)
    X = gen.normal(size=(7, 4))
    y = gen.integers(0, 6, size=7)
    m = MLPClassifier(MLPHyperparams(hidden_sizes=(5, 4)), seed=2).init_weights(4)
    _, grads = m.loss_and_gradients(X, y)

    eps = 1e-6
    analytic, numeric = [], []
    for params, grad in ((m.weights, [g[0] for g in grads]), (m.biases, [g[1] for g in grads])):
        for P, G in zip(params, grad):
            for idx in np.ndindex(P.shape):
                old = P[idx]
                P[idx] = old + eps
                up = m.loss_and_gradients(X, y)[0]
                P[idx] = old - eps
                down = m.loss_and_gradients(X, y)[0]
                P[idx] = old
                numeric.append((up - down) / (2 * eps))
                analytic.append(G[idx])
    analytic, numeric = np.asarray(analytic), np.asarray(numeric)
    assert np.linalg.norm(analytic - numeric) / np.linalg.norm(analytic + numeric) < 1e-4


def test_random_baseline_accuracy():
    gen = np.random.default_rng(0)
    X = gen.normal(size=(10000, 11))
    y = gen.integers(0, 6, size=10000)
    m = models.train("random", None, X, y)
    assert accuracy(m, X, y) == pytest.approx(1 / 6, abs=0.02)
    assert m.predict(X[:50]).tolist() == m.predict(X[:50]).tolist()


@pytest.mark.parametrize("family", ["svm", "knn", "dt", "rf", "mlp"])
def test_training_deterministic(family):
    X, y = blobs(15, n_classes=3, spread=3.0)
    hp = models.make_hyperparams(family, **SMALL_HP[family])
    probe = np.random.default_rng(1).normal(scale=10.0, size=(100, 2))
    a = models.train(family, hp, X, y, seed=9)
    b = models.train(family, hp, X, y, seed=9)
    assert a.predict(probe).tolist() == b.predict(probe).tolist()


# --- selection --------------------------------
def test_kfold_indices():
    folds = kfold_indices(11, 5, seed=0)
    assert [len(f) for f in folds] == [3, 2, 2, 2, 2]
    assert sorted(np.concatenate(folds).tolist()) == list(range(11))
    with pytest.raises(ModelError):
        kfold_indices(3, 5, seed=0)
    with pytest.raises(ModelError):
        kfold_indices(10, 1, seed=0)


def test_accuracy_and_confusion():
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    m = models.train("knn", KNNHyperparams(k=1), X, [0, 0, 1, 1])
    assert accuracy(m, X, [0, 1, 1, 1]) == 0.75
    counts = confusion_matrix(m, X, [0, 1, 1, 1])
    assert counts.shape == (6, 6)
    assert counts[1, 0] == 1
    assert counts.sum() == 4
    with pytest.raises(ModelError):
        accuracy(m, np.zeros((0, 1)), [])


def test_cross_validation_on_duplicated_rows():
    gen = np.random.default_rng(0)
    points = gen.normal(size=(10, 3))
    X = np.repeat(points, 10, axis=0)
    y = np.repeat(np.arange(10) % 6, 10)
    result = cross_validate("knn", KNNHyperparams(k=1), X, y, k=5, seed=0)
    assert result.mean == 1.0
    assert len(result.folds) == 5


def test_grid_search_keeps_earliest_tie():
    X, y = blobs(20, n_classes=3)
    grid = [KNNHyperparams(k=1), KNNHyperparams(k=3), KNNHyperparams(k=5)]
    best, table = grid_search("knn", grid, X, y, k=4, seed=0)
    assert best is grid[0]
    assert [hp for hp, _ in table] == grid
    assert all(result.mean == 1.0 for _, result in table)


def test_grid_search_picks_best():
    gen = np.random.default_rng(2)
    X = gen.normal(size=(100, 2))
    y = ((X[:, 0] > 0) & (X[:, 1] > 0)).astype(int)
    grid = [TreeHyperparams(max_depth=1), TreeHyperparams(max_depth=None)]
    best, table = grid_search("dt", grid, X, y)
    assert best == grid[1]
    assert table[1][1].mean > table[0][1].mean


def test_grid_search_empty_grid():
    with pytest.raises(HyperparamError):
        grid_search("dt", [], *blobs(5))


# --- model files ------------------------------
@pytest.mark.parametrize("family", ["svm", "knn", "dt", "rf", "mlp", "random"])
def test_save_load_predictions(family, tmp_path):
    X, y = blobs(30, n_classes=6, dim=11, spread=2.0)
    scaler = fit_scaler(X)
    Xs = scaler.transform(X)
    hp = models.make_hyperparams(family, **SMALL_HP.get(family, {}))
    m = models.train(family, hp, Xs, y, seed=3, scaler=scaler)

    path = tmp_path / f"{family}.json"
    save_model(m, path)
    loaded = load_model(path)
    assert loaded.family == family
    assert loaded.hp == m.hp
    assert loaded.scaler == scaler
    probe = np.random.default_rng(5).normal(size=(1000, 11))
    assert loaded.predict(probe).tolist() == m.predict(probe).tolist()


def test_model_version_mismatch():
    m = models.train("knn", KNNHyperparams(k=1), np.zeros((2, 1)), [0, 1])
    content = model_to_dict(m)
    content["schema_version"] = 2
    with pytest.raises(ModelVersionError):
        model_from_dict(content)


def test_model_unknown_family():
    m = models.train("knn", KNNHyperparams(k=1), np.zeros((2, 1)), [0, 1])
    content = model_to_dict(m)
    content["family"] = "xgboost"
    with pytest.raises(ModelError):
        model_from_dict(content)


def test_corrupt_model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text('{"schema_version": 1, "family"')
    with pytest.raises(ModelError):
        load_model(path)


def test_untrained_model_not_saved(tmp_path):
    with pytest.raises(ModelError):
        save_model(DecisionTreeClassifier(), tmp_path / "model.json")


def test_model_file_is_json(tmp_path):
    m = models.train("dt", TreeHyperparams(max_depth=2), np.array([[0.0], [1.0]]), [0, 1])
    save_model(m, tmp_path / "dt.json")
    content = json.loads((tmp_path / "dt.json").read_text())
    assert content["schema_version"] == 1
    assert content["hyperparams"] == {"family": "dt", "max_depth": 2, "min_samples_split": 2}
