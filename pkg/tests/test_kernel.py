import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from forge.constructors import (adjoin_identity, cyclic_group, heisenberg_group, left_zero,
                                null_semigroup, opposite, right_zero, trivial_semigroup)
from forge.errors import MalformedTable, NonAssociative, NotAHom, SizeOverflow
from forge.kernel import (FiniteGroup, FiniteSemigroup, Morphism, direct_product, relabel,
                          validate_semigroup)
from forge.tablefile import parse_table, read_table, write_table
from forge.iso import isomorphic, anti_isomorphic
import oracles


def test_validate_small_tables():
    assert validate_semigroup([[0]]).order == 1
    assert validate_semigroup([[0, 0], [1, 1]]).order == 2
    z2 = validate_semigroup([[0, 1], [1, 0]])
    assert z2.identity_element() == 0


def test_first_violation_matches_oracle():
    bad = [[1, 0], [0, 0]]
    expected = oracles.first_violation(bad)
    assert expected == (0, 0, 1)
    with pytest.raises(NonAssociative) as err:
        validate_semigroup(bad)
    assert (err.value.i, err.value.j, err.value.k) == expected


def test_malformed_entries():
    with pytest.raises(MalformedTable):
        validate_semigroup([[0, 2], [1, 0]])
    with pytest.raises(MalformedTable):
        validate_semigroup([[0, 1, 0], [1, 0, 1]])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)))
def test_validation_agrees_with_triple_loop(flat):
    n = int(round(len(flat) ** 0.5))
    t = [flat[i * n:(i + 1) * n] for i in range(n)]
    expected = oracles.first_violation(t)
    if expected is None:
        validate_semigroup(t)
    else:
        with pytest.raises(NonAssociative) as err:
            validate_semigroup(t)
        assert (err.value.i, err.value.j, err.value.k) == expected


def test_null_times_null_has_one_product():
    p = direct_product(null_semigroup(1), null_semigroup(1))
    assert p.order == 4
    assert int(p.product_flags().sum()) == 1


def test_product_encoding_and_identities():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    p = direct_product(z2, z3)
    for i in range(2):
        for j in range(3):
            for k in range(2):
                for m in range(3):
                    want = int(z2.table[i, k]) * 3 + int(z3.table[j, m])
                    assert p.table[i * 3 + j, k * 3 + m] == want
    v4 = direct_product(z2, z2)
    assert len(v4.idempotents()) == 1
    assert isinstance(v4, FiniteGroup)
    assert (v4.element_orders() <= 2).all()
    s = left_zero(3)
    assert isomorphic(direct_product(trivial_semigroup(), s), s) is not None


def test_product_cap():
    with pytest.raises(SizeOverflow):
        direct_product(cyclic_group(70), cyclic_group(70))


def test_constructors():
    n2 = null_semigroup(2)
    assert n2.order == 3 and (n2.table == 0).all()
    assert null_semigroup(0).order == 1
    h = heisenberg_group(2)
    assert h.order == 8
    a, b, c = h.index("a"), h.index("b"), h.index("c")
    e = h.identity
    assert h.mul(a, a) == h.mul(b, b) == h.mul(c, c) == e
    assert all(h.mul(c, x) == h.mul(x, c) for x in range(8))
    assert h.mul(b, a) == h.mul(h.mul(a, b), c)
    assert heisenberg_group(3).order == 27


def test_opposite_of_left_zero():
    lz = left_zero(2)
    op = opposite(lz)
    assert np.array_equal(op.table, right_zero(2).table)
    assert isomorphic(lz, op) is None
    assert anti_isomorphic(lz, op) is not None
    assert np.array_equal(opposite(op).table, lz.table)


def test_adjoin_identity():
    s = adjoin_identity(null_semigroup(1))
    assert s.order == 3
    assert s.identity_element() == 2


def test_morphism_checks():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    m = Morphism(z4, z2, [x % 2 for x in range(4)])
    assert m.kind == "surjection"
    with pytest.raises(NotAHom):
        Morphism(z4, z2, [0, 1, 1, 0])
    with pytest.raises(NotAHom):
        Morphism(z4, z2, [x % 2 for x in range(4)], kind="isomorphism")


def test_relabel_is_isomorphic(small_semigroups):
    rng = np.random.default_rng(1)
    for s in small_semigroups[::7]:
        p = rng.permutation(s.order)
        r = relabel(s, p)
        assert oracles.is_isomorphic(s, r)


def test_products_stay_associative(small_semigroups):
    rng = np.random.default_rng(2)
    for _ in range(60):
        a, b = (small_semigroups[i] for i in rng.integers(len(small_semigroups), size=2))
        p = direct_product(a, b)
        FiniteSemigroup(p.table)      # full revalidation


def test_table_files_round_trip(tmp_path):
    s = null_semigroup(2)
    for fmt in ("json", "text"):
        path = tmp_path / f"t.{fmt}"
        write_table(s, path, fmt)
        assert np.array_equal(read_table(path).table, s.table)
    doc = json.dumps({"order": 2, "table": [0, 1, 1, 0], "names": ["e", "a"]})
    assert parse_table(doc).names == ("e", "a")
    with pytest.raises(MalformedTable):
        parse_table("2\n0 1\n")
