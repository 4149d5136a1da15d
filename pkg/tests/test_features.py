"""Tests of feature extraction and scaling."""
import numpy as np
import pytest
from conftest import PERMUTATIONS_3, permutations_3, systems
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from varord.features import (
    FEATURE_COLUMNS,
    FEATURE_NAMES,
    FeatureVector,
    Scaler,
    apply_scaler,
    extract_features,
    feature_names,
    fit_scaler,
)
from varord.polysys import apply_permutation, parse_system


def test_feature_layout():
    assert len(FEATURE_NAMES) == len(FEATURE_COLUMNS) == 11
    assert FEATURE_COLUMNS[0] == "f1"
    assert FEATURE_COLUMNS[-1] == "f11"
    assert feature_names(1) == ["num_polys", "max_total_degree", "maxdeg_x1", "polyprop_x1", "monoprop_x1"]


def test_extract_example():
    v = extract_features(parse_system("vars 3; x1^2*x2 - 1; x1 + x3"))
    assert v.values == (2.0, 3.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, 0.5, 0.25, 0.25)


def test_extract_single_variable():
    v = extract_features(parse_system("vars 3; x1"))
    assert v.values == (1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def test_extract_constant_terms_count_as_monomials():
    v = extract_features(parse_system("vars 2; x1 + 1"))
    # monomials: x1 and 1
    assert v.values[-2:] == (0.5, 0.0)


@settings(max_examples=100, deadline=None)
@given(systems(), permutations_3)
def test_extract_equivariant(s, sigma):
    assert extract_features(apply_permutation(s, sigma)) == extract_features(s).permuted(sigma)


@given(systems())
def test_extract_bounds(s):
    v = extract_features(s)
    assert v.values[0] == len(s.polys)
    assert all(0.0 <= x <= 1.0 for x in v.values[5:])
    assert max(v.values[2:5]) <= v.values[1]


@pytest.mark.parametrize("sigma", PERMUTATIONS_3, ids=lambda p: p.to_text())
def test_permuted_inverse(sigma):
    v = FeatureVector((2, 3, 2, 1, 0, 1, 0.5, 0, 0.5, 0.25, 0))
    assert v.permuted(sigma).permuted(sigma.inverse()) == v


def test_feature_vector_length():
    with pytest.raises(ValueError):
        FeatureVector((1.0, 2.0, 3.0))


# --- scaler -----------------------------------
def test_fit_scaler_example():
    sc = fit_scaler([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    assert sc.means == (2.0, 5.0)
    assert sc.stds[0] == pytest.approx(np.sqrt(2 / 3))
    assert sc.stds[1] == 0.0


def test_constant_column_is_centred_only():
    sc = fit_scaler([[1.0, 5.0], [3.0, 5.0]])
    out = sc.transform([[3.0, 7.0]])
    assert out.tolist() == [[1.0, 2.0]]


def test_transform_standardises_training_rows():
    gen = np.random.default_rng(0)
    rows = gen.normal(3.0, 2.0, size=(200, 11))
    out = fit_scaler(rows).transform(rows)
    assert np.allclose(out.mean(axis=0), 0.0)
    assert np.allclose(out.std(axis=0), 1.0)


def test_apply_scaler_on_feature_vector():
    v = FeatureVector((2, 3, 2, 1, 0, 1, 0.5, 0, 0.5, 0.25, 0))
    assert apply_scaler(Scaler.identity(11), v) == v


def test_scaler_errors():
    with pytest.raises(ValueError):
        fit_scaler([])
    with pytest.raises(ValueError):
        Scaler((0.0,), (1.0, 1.0))
    with pytest.raises(ValueError):
        Scaler((0.0,), (-1.0,))
    with pytest.raises(ValueError):
        Scaler.identity(3).transform([1.0, 2.0])
    with pytest.raises(ValueError):
        apply_scaler(Scaler.identity(3), FeatureVector((1, 2, 3, 4, 5)))


def test_scaler_dict():
    sc = fit_scaler([[1.0], [2.0]])
    assert Scaler.from_dict(sc.to_dict()) == sc


def _neighbours(dist_, i_, k_, tol_=1e-9):
    """indices within the k-th smallest distance from row i, ties included"""
    d = np.delete(dist_[i_], i_)
    others = np.delete(np.arange(len(dist_)), i_)
    kth = np.sort(d)[k_ - 1]
    return set(others[d <= kth + tol_].tolist())


@settings(max_examples=60, deadline=None)
@given(
    hnp.arrays(np.int64, st.tuples(st.integers(3, 12), st.integers(1, 4)), elements=st.integers(-5, 5)),
    st.integers(1, 5),
)
def test_scaling_preserves_knn_neighbours(rows, k):
    k = min(k, len(rows) - 1)
    x = rows.astype(float)

    # brute force, per-column standardised distance on the raw rows
    stds = x.std(axis=0)
    stds = np.where(stds == 0.0, 1.0, stds)
    diff = (x[:, None, :] - x[None, :, :]) / stds
    raw = np.sqrt((diff ** 2).sum(axis=-1))

    z = fit_scaler(x.tolist()).transform(x)
    scaled = np.sqrt(((z[:, None, :] - z[None, :, :]) ** 2).sum(axis=-1))

    assert np.allclose(raw, scaled)
    for i in range(len(x)):
        assert _neighbours(raw, i, k) == _neighbours(scaled, i, k)
