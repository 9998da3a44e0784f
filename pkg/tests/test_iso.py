import itertools

import numpy as np
import pytest

from forge.constructors import cyclic_group, null_semigroup, square_class_semigroup, trivial_semigroup
from forge.errors import CapExceeded
from forge.iso import all_isomorphisms, anti_isomorphic, automorphisms, fingerprint, isomorphic
from forge.kernel import FiniteSemigroup, direct_product, relabel
from forge.structure import null_factor
import oracles


def test_examples():
    z2 = cyclic_group(2)
    assert isomorphic(cyclic_group(4), direct_product(z2, z2)) is None
    s = direct_product(square_class_semigroup(1), null_semigroup(1))
    shuffled = relabel(s, np.random.default_rng(0).permutation(s.order))
    assert isomorphic(s, shuffled) is not None
    big = direct_product(square_class_semigroup(1), null_semigroup(2))
    w = null_factor(big, 1)
    assert isomorphic(direct_product(w.left_factor, w.right_factor), big) is not None


def test_equivalence_with_witnesses(small_semigroups):
    rng = np.random.default_rng(5)
    for s in small_semigroups[::5]:
        assert isomorphic(s, s).images.tolist() == list(range(s.order))
        a = relabel(s, rng.permutation(s.order))
        b = relabel(a, rng.permutation(s.order))
        f, g = isomorphic(s, a), isomorphic(a, b)
        assert isomorphic(a, s) is not None
        composed = g.images[f.images]
        assert oracles.is_isomorphic(s, b)
        # composing the two witnesses gives a valid s -> b map
        tb = b.table
        assert all(composed[s.table[i, j]] == tb[composed[i], composed[j]]
                   for i in range(s.order) for j in range(s.order))


def test_complete_on_order_three():
    tables = [FiniteSemigroup(t, check=False) for t in oracles.all_semigroup_tables(3)]
    keys = [oracles.class_key(t) for t in tables]
    rng = np.random.default_rng(3)
    idx = rng.choice(len(tables), size=60, replace=False)
    for i, j in itertools.combinations(idx, 2):
        same = keys[i] == keys[j]
        assert (isomorphic(tables[i], tables[j]) is not None) == same
        if fingerprint(tables[i]).digest != fingerprint(tables[j]).digest:
            assert not same


def test_all_isomorphisms_count_matches_brute_force(small_semigroups):
    for s in small_semigroups[::9]:
        assert sum(1 for _ in all_isomorphisms(s, s)) == oracles.automorphism_count(s)


def test_anti_isomorphic_null():
    n = null_semigroup(2)
    assert anti_isomorphic(n, n) is not None


def test_automorphism_orders():
    assert automorphisms(cyclic_group(5)).order == 4
    z2 = cyclic_group(2)
    v4 = direct_product(z2, z2)
    assert automorphisms(v4).order == oracles.automorphism_count(v4) == 6
    assert automorphisms(trivial_semigroup_group()).order == 1
    with pytest.raises(CapExceeded):
        automorphisms(cyclic_group(300))


def trivial_semigroup_group():
    from forge.kernel import as_group
    return as_group(trivial_semigroup())
