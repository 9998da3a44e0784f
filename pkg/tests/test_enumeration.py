import itertools
import json

import numpy as np
import pytest

from forge.enumeration import (CatalogHandle, canonical_form, enumerate_semigroups, load_catalog,
                               save_catalog, validate_catalog)
from forge.errors import CapExceeded, CorruptShard
from forge.iso import isomorphic
import oracles

ISO_COUNTS = {1: 1, 2: 5, 3: 24, 4: 188}
ANTI_COUNTS = {1: 1, 2: 4, 3: 18, 4: 126}


@pytest.mark.parametrize("anti", [False, True])
def test_counts_match_brute_force_to_order_three(anti):
    cat = enumerate_semigroups(3, "anti" if anti else "iso")
    for n in (1, 2, 3):
        assert cat.counts[n] == oracles.count_classes(n, anti=anti)
        got = {oracles.class_key(s, anti) for s in cat.semigroups(n)}
        want = {oracles.class_key(t, anti) for t in oracles.all_semigroup_tables(n)}
        assert got == want


def test_order_four_counts(catalog_iso, catalog_anti):
    assert catalog_iso.counts == ISO_COUNTS
    assert catalog_anti.counts == ANTI_COUNTS
    other = enumerate_semigroups(4, "iso", cell_order="col")
    assert other.counts == ISO_COUNTS


def test_no_duplicates_order_four(catalog_iso):
    tables = list(catalog_iso.semigroups(4))
    for a, b in itertools.combinations(tables, 2):
        if np.array_equal(np.sort(a.table, axis=None), np.sort(b.table, axis=None)):
            assert isomorphic(a, b) is None


def test_tables_are_canonical_and_valid(catalog_anti):
    validate_catalog(catalog_anti)
    for s in catalog_anti.semigroups(3):
        assert np.array_equal(canonical_form(s.table, "anti"), s.table)


def test_idempotent_filter():
    for anti in (False, True):
        cat = enumerate_semigroups(3, "anti" if anti else "iso", idempotent_only=True)
        for n in (1, 2, 3):
            assert cat.counts[n] == oracles.count_classes(n, anti=anti, idempotent=True)
    assert enumerate_semigroups(2, "iso", idempotent_only=True).counts[2] == 3
    assert enumerate_semigroups(2, "anti", idempotent_only=True).counts[2] == 2


def test_order_five_is_deterministic(tmp_path):
    a = enumerate_semigroups(5, "anti")
    b = enumerate_semigroups(5, "anti")
    save_catalog(a, tmp_path / "a")
    save_catalog(b, tmp_path / "b")
    assert (tmp_path / "a" / "order_5.bin").read_bytes() == (tmp_path / "b" / "order_5.bin").read_bytes()
    assert a.counts[5] == 1160


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_semigroups(7)
    with pytest.raises(ValueError):
        enumerate_semigroups(3, "sideways")


def test_round_trip_and_corruption(tmp_path, catalog_anti):
    save_catalog(catalog_anti, tmp_path)
    assert load_catalog(tmp_path) == catalog_anti

    shard = tmp_path / "order_4.bin"
    data = shard.read_bytes()
    shard.write_bytes(data[:-3])
    with pytest.raises(CorruptShard):
        load_catalog(tmp_path)
    shard.write_bytes(data)

    man = json.loads((tmp_path / "manifest.json").read_text())
    man["counts"]["4"] += 1
    (tmp_path / "manifest.json").write_text(json.dumps(man))
    with pytest.raises(CorruptShard):
        load_catalog(tmp_path)


def test_handle_iteration(catalog_anti):
    assert isinstance(catalog_anti, CatalogHandle)
    assert sum(1 for _ in catalog_anti) == sum(ANTI_COUNTS.values())
