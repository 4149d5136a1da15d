"""Shared strategies and fixtures."""
import numpy as np
import pytest
from hypothesis import strategies as st

from varord import cadcost, util
from varord.dataset import Dataset, GeneratorConfig, ProblemRecord, generate_synthetic
from varord.features import FeatureVector
from varord.polysys import Polynomial, PolySystem, VarPermutation, all_permutations

PERMUTATIONS_3 = all_permutations(3)


@st.composite
def polynomials(draw, nvars=3, max_terms=3, max_degree=2, max_total_degree=3):
    """non-zero polynomial with small integer coefficients"""
    monomial = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(
        lambda m: sum(m) <= max_total_degree
    )
    terms = draw(
        st.dictionaries(
            monomial,
            st.integers(-9, 9).filter(bool),
            min_size=1,
            max_size=max_terms,
        )
    )
    return Polynomial(terms, nvars)


@st.composite
def systems(draw, nvars=3, max_polys=3, **kwargs):
    polys = draw(st.lists(polynomials(nvars=nvars, **kwargs), min_size=1, max_size=max_polys))
    return PolySystem(tuple(polys), nvars)


permutations_3 = st.sampled_from(PERMUTATIONS_3)
labels_3 = st.integers(0, 5)


def feature_vector(k_):
    """distinct, valid looking feature vector for the k-th record"""
    gen = util.rng(1234, k_)
    degrees = gen.integers(0, 4, size=3)
    props = gen.integers(0, 5, size=6) / 4
    return FeatureVector((float(1 + k_ % 4), float(degrees.max() + k_ % 3), *degrees, *props))


def root_record(k_, label_=None):
    """orbit root without system, whose cheapest ordering is label_ (unique)"""
    label = k_ % 6 if label_ is None else label_
    timings = [10.0 + j for j in range(6)]
    timings[label], timings[0] = timings[0], timings[label]
    return ProblemRecord(
        id=f"r{k_:05d}",
        orbit_id=f"r{k_:05d}",
        perm=VarPermutation.identity(3),
        features=feature_vector(k_),
        timings=tuple(timings),
    )


def labelled_dataset(counts_):
    """records carrying only a label, counts_[k] of label k"""
    records = []
    for label, count in enumerate(counts_):
        for _ in range(count):
            records.append(
                ProblemRecord(
                    id=f"x{len(records):06d}",
                    orbit_id=f"x{len(records):06d}",
                    perm=VarPermutation.identity(3),
                    features=feature_vector(len(records)),
                    label=label,
                )
            )
    return Dataset(tuple(records))


@pytest.fixture
def roots_dataset():
    """120 tie-free roots, 20 per label"""
    return Dataset(tuple(root_record(k) for k in range(120)), {"source": "fixture"})


@pytest.fixture(scope="session")
def synthetic_systems():
    """50 seeded random systems (at most 3 polynomials, total degree at most 3)"""
    cfg = GeneratorConfig(
        n_systems=50, polys=(1, 3), terms=(1, 3), max_degree=2, max_total_degree=3, allow_ties=True
    )
    return [r.system for r in generate_synthetic(cfg, seed=2024)]


@pytest.fixture(scope="session")
def small_roots():
    """tie-free synthetic roots labelled by the oracle"""
    return generate_synthetic(GeneratorConfig(n_systems=30), seed=7)


@pytest.fixture(autouse=True, scope="session")
def _clear_cost_caches():
    yield
    cadcost.clear_caches()


def blobs(n_per_class, n_classes=2, dim=2, spread=1.0, distance=10.0, seed=0):
    """well separated gaussian clusters, one per class"""
    gen = np.random.default_rng(seed)
    centers = np.zeros((n_classes, dim))
    centers[:, 0] = distance * np.arange(n_classes)
    X =np.concatenate([c + spread * gen.normal(size=(n_per_class, dim)) for c in centers])
    y = np.repeat(np.arange(n_classes), n_per_class)
    return X, y
