"""Tests of orbit augmentation and class distributions."""
import json

import pandas as pd
import pytest
from conftest import labelled_dataset, root_record

from varord.augment import (
    ClassDistribution,
    augment_dataset,
    class_distribution,
    imbalance_ratio,
    orbit,
    roots,
    write_distribution,
)
from varord.cadcost import rank_orderings
from varord.dataset import Dataset, label_from_timings
from varord.errors import AugmentError
from varord.features import extract_features
from varord.polysys import apply_permutation, permute_label


def test_orbit_of_synthetic_root(small_roots):
    r = small_roots[0]
    members = orbit(r)
    assert len(members) == 6
    assert members[0] is r
    assert [m.id for m in members[1:]] == [f"{r.id}#{k}" for k in range(1, 6)]
    assert {m.orbit_id for m in members} == {r.orbit_id}
    for m in members:
        assert m.system == apply_permutation(r.system, m.perm)
        assert m.features == extract_features(m.system)
        assert m.label == permute_label(r.label, m.perm)
        assert m.tie == r.tie


def test_orbit_labels_match_oracle(small_roots):
    for r in small_roots[:5]:
        for m in orbit(r)[1:]:
            table = rank_orderings(m.system)
            assert table.argmin_label == m.label
            assert label_from_timings(m.timings) == (m.label, False)


def test_orbit_without_system():
    r = root_record(7)
    for m in orbit(r):
        assert m.features == r.features.permuted(m.perm)
        assert m.timings[m.label] == min(m.timings)


def test_orbit_labels_cover_every_class():
    assert sorted(m.label for m in orbit(root_record(0))) == list(range(6))


def test_orbit_needs_root():
    member = orbit(root_record(1))[3]
    with pytest.raises(AugmentError):
        orbit(member)
    with pytest.raises(AugmentError):
        augment_dataset(Dataset((member,)))


def test_augment_size():
    d = Dataset(tuple(root_record(k, 0) for k in range(6895)))
    out = augment_dataset(d)
    assert len(out) == 41370
    assert out.provenance["augmented"] is True


def test_augment_balances_classes():
    # every label appears once per orbit
    d = Dataset(tuple(root_record(k, 0) for k in range(40)))
    assert class_distribution(d).counts == (40, 0, 0, 0, 0, 0)
    assert class_distribution(augment_dataset(d)).counts == (40,) * 6


def test_roots(roots_dataset):
    assert roots(augment_dataset(roots_dataset)).ids() == roots_dataset.ids()


# --- class distribution -----------------------
def test_class_distribution():
    dist = class_distribution(labelled_dataset([1, 2, 3, 0, 5, 6]))
    assert dist == ClassDistribution((1, 2, 3, 0, 5, 6), 17)


def test_imbalance_ratio():
    assert imbalance_ratio(ClassDistribution((252, 392, 479, 348, 373, 1156), 3000)) == pytest.approx(
        4.587, abs=1e-3
    )
    assert imbalance_ratio(ClassDistribution((5,) * 6, 30)) == 1.0
    with pytest.raises(AugmentError):
        imbalance_ratio(ClassDistribution((0, 1, 1, 1, 1, 1), 5))


def test_distribution_total_checked():
    with pytest.raises(ValueError):
        ClassDistribution((1, 2), 4)


def test_write_distribution(tmp_path):
    dist = ClassDistribution((1, 2, 3, 4, 5, 6), 21)
    write_distribution(dist, tmp_path / "d.csv", tmp_path / "d.json")
    df = pd.read_csv(tmp_path / "d.csv")
    assert df.columns.tolist() == ["label", "count"]
    assert df["count"].tolist() == [1, 2, 3, 4, 5, 6]
    summary = json.loads((tmp_path / "d.json").read_text())
    assert summary["total"] == 21
    assert summary["imbalance_ratio"] == 6.0


def test_write_distribution_with_empty_class(tmp_path):
    write_distribution(ClassDistribution((0, 1, 1, 1, 1, 1), 5), tmp_path / "d.csv", tmp_path / "d.json")
    assert json.loads((tmp_path / "d.json").read_text())["imbalance_ratio"] is None
