"""Acceptance criteria 1-9. Each test records one PASS/FAIL line; the lines are
printed in the pytest terminal summary, and directly when this file is run as
a script (``python3 tests/test_acceptance.py``)."""

from __future__ import annotations

import contextlib
import itertools
import time

import numpy as np
import pytest

from forge.certificates import check_certificate
from forge.constructors import null_semigroup, square_class_semigroup
from forge.enumeration import enumerate_semigroups, save_catalog
from forge.groups import direct_decomposition, is_simple, monolith, minimal_normal_subgroups
from forge.iso import isomorphic
from forge.kernel import direct_product
from forge.primeness import (NOT_PRIME, PRIME, implication_audit, modified_rhodes_direct_prime_group,
                             rhodes_semidirect_prime_group, tarski_prime_group)
from forge.reproduce import verify_paper
from forge.structure import null_factor, null_factor_refusal
from forge.zoo import metacyclic, p5_group, two_prime_semidirect, zoo_groups, zp2_subquotient
import oracles
import properties as P

REPORT: list[str] = []


@contextlib.contextmanager
def criterion(label: str, limit: float | None = None):
    """Time the block and record PASS/FAIL; the block's assertions decide."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        REPORT.append(f"FAIL  {label}  ({time.perf_counter() - t0:.1f}s): {exc!r:.200}")
        raise
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        REPORT.append(f"FAIL  {label}  ({dt:.1f}s, limit {limit:.0f}s)")
        pytest.fail(f"{label} took {dt:.1f}s, limit {limit}s")
    REPORT.append(f"PASS  {label}  ({dt:.1f}s)")


def _assert_all_pass(assertions):
    assert assertions
    bad = [f"{a.check}: {a.claim} ({a.detail})" for a in assertions if not a.passed]
    assert not bad, bad


# 1 -------------------------------------------------------------------------------

def test_criterion_1_null_not_prime():
    with criterion("1 Null(kappa) witnesses for kappa = 1, 2, 3", limit=5):
        for kappa in (1, 2, 3):
            s = square_class_semigroup(kappa)
            assert s.order == 2 * (kappa + 1)
            n = next(n for n in itertools.count(1) if (n + 1) % (kappa + 1))
            assert null_factor(s, kappa) is None
            assert null_factor(null_semigroup(n), kappa) is None
            for subject in (s, null_semigroup(n)):
                r = null_factor_refusal(subject, kappa)
                cert = {"type": "null_refusal", "subject": subject.table.tolist(),
                        "kappa": kappa, "class": list(r.class_members)}
                assert check_certificate(cert)[0]
            big = direct_product(s, null_semigroup(n))
            w = null_factor(big, kappa)
            assert w is not None and w.verify()
            assert isomorphic(w.right_factor, null_semigroup(kappa)) is not None
        _assert_all_pass(verify_paper(["null"]))


# 2 -------------------------------------------------------------------------------

def test_criterion_2_q8_d4():
    with criterion("2 Q8 / D4 example", limit=30):
        res = verify_paper(["Q8D4"])
        _assert_all_pass(res)
        claims = {a.claim for a in res}
        for want in ("A embeds in Q8 x Q8", "A embeds in D4 x D4", "A maps onto Q8", "A maps onto D4",
                     "Q8 is not a subquotient of D4", "D4 is not a subquotient of Q8",
                     "Q8 has monolith {1, -1}", "D4 has monolith {e, p^2}"):
            assert want in claims, want


# 3 -------------------------------------------------------------------------------

def _p5(p):
    g, proj, h = p5_group(p)
    assert g.order == p ** 5
    m = monolith(g)
    assert m is not None
    c = h.index("c")
    image = int(proj.images[c * h.order + h.identity])
    t = oracles.rows(g)
    inv = [int(x) for x in g.inverses]
    assert _normal_closure(t, inv, image) == frozenset(m.members)
    _assert_all_pass(verify_paper(["p5"], p=p))


def test_criterion_3_p5_p2():
    with criterion("3 p^5 example at p = 2", limit=60):
        _p5(2)


@pytest.mark.slow
def test_criterion_3_p5_p3():
    with criterion("3 p^5 example at p = 3 (slow)"):
        _p5(3)


# 4 -------------------------------------------------------------------------------

def test_criterion_4_zpzp2():
    with criterion("4 Z9 x| Z3 inside Z9 x Heis(3)", limit=60):
        w = zp2_subquotient(3)
        assert w.ambient.order == 243 and w.subgroup.order == 81 and len(w.kernel) == 3
        assert w.verify()
        assert isomorphic(w.quotient_group(), metacyclic(9, 3, 4)) is not None
        _assert_all_pass(verify_paper(["ZpZp2"], p=3))


# 5 -------------------------------------------------------------------------------

def test_criterion_5_two_prime():
    with criterion("5 (Zq0 x Zq1) x| Zp at (2,3,5) and (3,7,7)"):
        for (p, q0, q1), expect in (((2, 3, 5), None), ((3, 7, 7), 8)):
            g = two_prime_semidirect(p, q0, q1)
            assert tarski_prime_group(g).verdict == PRIME
            assert len(direct_decomposition(g)) == 1
            mins = minimal_normal_subgroups(g)
            assert len(mins) >= 2 and monolith(g) is None
            if expect is not None:
                assert len(mins) == expect
        _assert_all_pass(verify_paper(["pq1q2"]))


# 6 -------------------------------------------------------------------------------

def test_criterion_6_audit():
    with criterion("6 implication audit over the zoo up to order 32"):
        rep = implication_audit(zoo_groups(32), zoo_groups(8))
        assert len(rep.rows) == len(zoo_groups(32))
        assert rep.violations == []
        assert {"Z4", "S3"} & set(rep.strictness[1])
        assert {"Q8", "D4"} <= set(rep.strictness[2])
        assert "D15" in rep.strictness[3]


# 7 -------------------------------------------------------------------------------

def test_criterion_7_enumeration(tmp_path):
    with criterion("7 semigroup counts and order-5 determinism", limit=300):
        iso = enumerate_semigroups(5, "iso")
        anti = enumerate_semigroups(5, "anti")
        for n in (1, 2, 3):
            assert iso.counts[n] == oracles.count_classes(n)
            assert anti.counts[n] == oracles.count_classes(n, anti=True)
        # order 4: a second run with the other cell order is the cross-check
        assert [iso.counts[n] for n in (1, 2, 3, 4)] == [1, 5, 24, 188]
        assert [anti.counts[n] for n in (1, 2, 3, 4)] == [1, 4, 18, 126]
        assert enumerate_semigroups(4, "iso", cell_order="col").counts[4] == 188
        assert enumerate_semigroups(4, "anti", cell_order="col").counts[4] == 126
        for mode, first in (("iso", iso), ("anti", anti)):
            again = enumerate_semigroups(5, mode)
            save_catalog(first, tmp_path / f"{mode}1")
            save_catalog(again, tmp_path / f"{mode}2")
            a = (tmp_path / f"{mode}1" / "order_5.bin").read_bytes()
            b = (tmp_path / f"{mode}2" / "order_5.bin").read_bytes()
            assert a == b


# 8 -------------------------------------------------------------------------------

CASES = 1000


def test_criterion_8_properties():
    with criterion(f"8 property suites, {CASES} cases each"):
        rng = np.random.default_rng(2024)
        cat = P.catalog()
        upto3 = [s for s in cat if s.order <= 3]
        upto2 = [s for s in cat if s.order <= 2]
        anti = P.anti_catalog()

        def pick(seq):
            return seq[int(rng.integers(len(seq)))]

        counts = dict.fromkeys(("classes", "cancel", "skeleton", "extend", "split", "null"), 0)
        for _ in range(CASES):
            P.check_product_classes(pick(cat), pick(cat))
            counts["classes"] += 1
            P.check_cancellativity_product(pick(cat), pick(cat))
            counts["cancel"] += 1
            P.check_skeleton_invariance(pick(cat), pick(cat), int(rng.integers(2**32)))
            counts["skeleton"] += 1
            P.check_extend_ideal_hom(pick(cat), int(rng.integers(4)), int(rng.integers(4)),
                                     int(rng.integers(6)))
            counts["extend"] += 1
            P.check_split_product_hom(pick(upto3), pick(upto2), int(rng.integers(4)),
                                      int(rng.integers(6)))
            counts["split"] += 1
            P.check_null_factor_cross(P.semigroup_up_to_8(int(rng.integers(10**6)),
                                                          int(rng.integers(10**6))),
                                      int(rng.integers(1, 4)), anti)
            counts["null"] += 1
        assert min(counts.values()) >= CASES


# 9 -------------------------------------------------------------------------------

def _normal_closure(t, inv, x) -> frozenset:
    n = len(t)
    seen = {x}
    frontier = [x]
    while frontier:
        y = frontier.pop()
        new = {t[t[g][y]][inv[g]] for g in range(n)} | {t[y][z] for z in seen}
        for z in new - seen:
            seen.add(z)
            frontier.append(z)
    return frozenset(seen)


def _normal_subgroups(g) -> set[frozenset]:
    """Joins of normal closures, by plain set arithmetic."""
    t = oracles.rows(g)
    n = len(t)
    e = oracles.identity_of(t)
    inv = [next(y for y in range(n) if t[x][y] == e) for x in range(n)]
    closures = {_normal_closure(t, inv, x) for x in range(n)}
    found = {frozenset([e])} | closures
    grow = True
    while grow:
        grow = False
        for a, b in itertools.product(list(found), list(closures)):
            if b <= a:
                continue
            gen = set(a | b)
            frontier = list(gen)
            while frontier:
                y = frontier.pop()
                for z in list(gen):
                    for w in (t[y][z], t[z][y]):
                        if w not in gen:
                            gen.add(w)
                            frontier.append(w)
            j = frozenset(gen)
            if j not in found:
                found.add(j)
                grow = True
    return found


def test_criterion_9_decision_equivalences():
    with criterion("9 decider equivalences on the zoo up to order 60"):
        groups = zoo_groups(60)
        assert len(groups) >= 60
        for name, g in groups:
            normals = _normal_subgroups(g)
            e = g.identity
            n = g.order
            simple = len(normals) == 2
            nontrivial = [m for m in normals if len(m) > 1]
            minimal = [m for m in nontrivial if not any(o < m for o in nontrivial)]
            monolithic = len(minimal) == 1
            decomposable = any(a & b == {e} and len(a) * len(b) == n
                               for a, b in itertools.combinations(
                                   [m for m in nontrivial if len(m) < n], 2))
            sd = rhodes_semidirect_prime_group(g).verdict
            ta = tarski_prime_group(g).verdict
            mr = modified_rhodes_direct_prime_group(g).verdict
            assert (sd == PRIME) == simple == is_simple(g), name
            assert (ta == PRIME) == (not decomposable) == (len(direct_decomposition(g)) == 1), name
            assert (mr == PRIME) == monolithic == (monolith(g) is not None), name
            for v in (sd, ta, mr):
                assert v in (PRIME, NOT_PRIME)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
