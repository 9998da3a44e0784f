import numpy as np
import pytest

from forge.constructors import (cyclic_group, left_zero, null_semigroup, square_class_semigroup,
                                symmetric_group)
from forge.errors import CatalogInsufficient, NotAHom, NotAnIdeal
from forge.iso import isomorphic
from forge.kernel import Morphism, direct_product
from forge.structure import (action_classes, cancellativity, direct_factor, extend_ideal_hom,
                             is_null, null_factor, null_factor_refusal, skeleton,
                             split_product_hom)
import oracles


def test_action_classes_examples():
    ac = action_classes(null_semigroup(3))
    assert ac.n_classes == 1 and len(ac.classes[0]) == 4
    assert int(ac.product_flags.sum()) == 1
    w = square_class_semigroup(1)
    ac = action_classes(w)
    assert ac.classes == ((0, 1), (2, 3))
    assert ac.per_class_product_count == (0, 2)
    assert action_classes(symmetric_group(3)).is_discrete()


def test_action_classes_match_oracle(small_semigroups):
    for s in small_semigroups:
        ac = action_classes(s)
        assert set(frozenset(c) for c in ac.classes) == set(oracles.action_partition(s))
        assert set(np.flatnonzero(ac.product_flags).tolist()) == oracles.product_elements(s)
        assert all(min(c) < min(d) for c, d in zip(ac.classes, ac.classes[1:]))


def test_null_iff_one_class(small_semigroups):
    for s in small_semigroups:
        assert is_null(s) == (action_classes(s).n_classes == 1)


def test_skeleton_examples():
    sk, inc = skeleton(null_semigroup(3))
    assert sk.order == 1 and inc.images.tolist() == [0]
    sk, _ = skeleton(left_zero(3))
    assert sk.order == 3
    sk, inc = skeleton(square_class_semigroup(1))
    assert inc.images.tolist() == [0, 2, 3]


def test_null_factor_examples():
    w = square_class_semigroup(1)
    assert null_factor(w, 1) is None
    r = null_factor_refusal(w, 1)
    assert r.class_members == (2, 3) and r.product_count == 2
    big = direct_product(w, null_semigroup(2))
    wit = null_factor(big, 1)
    assert wit is not None and wit.verify()
    assert wit.right_factor.order == 2 and is_null(wit.right_factor)
    sizes = sorted(len(c) for c in action_classes(big).classes)
    assert sizes == [6, 6]
    wit = null_factor(null_semigroup(2), 2)
    assert wit is not None and wit.left_factor.order == 1
    assert null_factor(null_semigroup(2), 1) is None
    with pytest.raises(ValueError):
        null_factor(w, 0)


def test_null_factor_reconstruction_is_isomorphic():
    big = direct_product(square_class_semigroup(1), null_semigroup(2))
    wit = null_factor(big, 1)
    again = direct_product(wit.left_factor, null_semigroup(1))
    assert isomorphic(again, big) is not None


def test_direct_factor_examples(catalog_anti):
    z2, n1 = cyclic_group(2), null_semigroup(1)
    wit = direct_factor(direct_product(z2, n1), z2, catalog_anti)
    assert wit is not None and is_null(wit.right_factor)
    assert direct_factor(square_class_semigroup(1), n1, catalog_anti) is None
    assert direct_factor(cyclic_group(4), z2, catalog_anti) is None
    assert direct_factor(cyclic_group(6), cyclic_group(4), catalog_anti) is None


def test_direct_factor_beyond_reach():
    big = direct_product(null_semigroup(1), null_semigroup(5))
    with pytest.raises(CatalogInsufficient):
        direct_factor(big, null_semigroup(1))


def test_order_two_catalog_has_four_classes(catalog_anti):
    assert catalog_anti.counts[2] == 4 == oracles.count_classes(2, anti=True)


def test_cancellativity_examples():
    assert cancellativity(symmetric_group(3)) == cancellativity(cyclic_group(5))
    c = cancellativity(symmetric_group(3))
    assert c.left and c.right and c.weak
    c = cancellativity(left_zero(2))
    assert (c.left, c.right, c.weak) == (False, True, True)
    c = cancellativity(null_semigroup(1))
    assert (c.left, c.right, c.weak) == (False, False, False)


def test_left_zero_orientation_brute_force():
    t = left_zero(2).table
    # left cancellation fails: a*x == a*y with x != y
    assert any(t[a, x] == t[a, y] for a in range(2) for x in range(2) for y in range(2) if x != y)
    # right cancellation holds: x*a == y*a forces x == y
    assert not any(t[x, a] == t[y, a] for a in range(2) for x in range(2) for y in range(2) if x != y)


def test_extend_ideal_hom_examples():
    z4 = cyclic_group(4)
    ident = Morphism(z4, z4, np.arange(4))
    assert extend_ideal_hom(z4, range(4), z4, ident).images.tolist() == [0, 1, 2, 3]

    n1, z2 = null_semigroup(1), cyclic_group(2)
    pi = Morphism(n1, z2, [0], support=(0,))
    hat = extend_ideal_hom(n1, [0], z2, pi)
    assert hat.images.tolist() == [0, 0]

    with pytest.raises(NotAnIdeal):
        lz = left_zero(2)     # {0} is closed, but 1*0 = 1 leaves it
        extend_ideal_hom(lz, [0], z2, Morphism(lz, z2, [0], support=(0,)))


def test_extend_rejects_mismatched_support():
    n1, z2 = null_semigroup(1), cyclic_group(2)
    pi = Morphism(n1, z2, [0, 0])
    with pytest.raises(NotAHom):
        extend_ideal_hom(n1, [0], z2, pi)


def test_split_product_hom_examples():
    z2, z3, z6 = cyclic_group(2), cyclic_group(3), cyclic_group(6)
    p = direct_product(z2, z2)
    ps, pt = split_product_hom(z2, z2, z2, Morphism(p, z2, [(a + b) % 2 for a in range(2) for b in range(2)]))
    assert ps.images.tolist() == [0, 1] and pt.images.tolist() == [0, 1]
    ps, pt = split_product_hom(z2, z2, z2, Morphism(p, z2, [a for a in range(2) for b in range(2)]))
    assert ps.images.tolist() == [0, 1] and pt.images.tolist() == [0, 0]
    q = direct_product(z2, z3)
    canon = Morphism(q, z6, [(3 * a + 4 * b) % 6 for a in range(2) for b in range(3)], kind="isomorphism")
    ps, pt = split_product_hom(z2, z3, z6, canon)
    assert ps.images.tolist() == [0, 3] and pt.images.tolist() == [0, 4, 2]
    ident = extend_ideal_hom(q, range(6), z6, canon)
    assert ident.images.tolist() == canon.images.tolist()
