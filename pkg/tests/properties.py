"""Law checks shared by the hypothesis suite and the acceptance run.

Each ``check_*`` takes one concrete case and raises AssertionError when the law
fails. Cases are built from catalog semigroups and a few small groups.
"""

from __future__ import annotations

import functools

import numpy as np

from forge.constructors import cyclic_group, null_semigroup, symmetric_group
from forge.enumeration import enumerate_semigroups
from forge.iso import all_isomorphisms, isomorphic
from forge.kernel import Morphism, direct_product
from forge.structure import (action_classes, cancellativity, direct_factor, extend_ideal_hom,
                             null_factor, skeleton, split_product_hom)
import oracles


@functools.lru_cache(maxsize=None)
def catalog(max_order: int = 4) -> tuple:
    return tuple(enumerate_semigroups(max_order, "iso"))


@functools.lru_cache(maxsize=None)
def small_groups() -> tuple:
    return (cyclic_group(1), cyclic_group(2), cyclic_group(3), symmetric_group(3))


@functools.lru_cache(maxsize=None)
def automorphism_maps(k: int) -> tuple:
    g = small_groups()[k]
    return tuple(m.images for m in all_isomorphisms(g, g))


def check_product_classes(s, t) -> None:
    p = direct_product(s, t)
    m = t.order
    cs, ct, cp = (action_classes(x) for x in (s, t, p))
    for x in range(p.order):
        a, b = divmod(x, m)
        assert cp.labels[x] == cp.labels[a * m + b]
        same = {y for y in range(p.order)
                if cs.labels[y // m] == cs.labels[a] and ct.labels[y % m] == ct.labels[b]}
        assert same == set(np.flatnonzero(cp.labels == cp.labels[x]).tolist())
        assert bool(cp.product_flags[x]) == bool(cs.product_flags[a] and ct.product_flags[b])
    assert set(oracles.action_partition(p)) == {frozenset(c) for c in cp.classes}


def check_cancellativity_product(s, t) -> None:
    p = cancellativity(direct_product(s, t))
    a, b = cancellativity(s), cancellativity(t)
    assert p.left == (a.left and b.left)
    assert p.right == (a.right and b.right)
    assert p.weak == (a.weak and b.weak)


def check_skeleton_invariance(s, t, seed: int) -> None:
    p = direct_product(s, t)
    rng = np.random.default_rng(seed)
    base, _ = skeleton(p)
    other, inc = skeleton(p, representative=lambda members: members[rng.integers(len(members))])
    assert isomorphic(base, other) is not None
    flags = p.product_flags()
    kept = set(inc.images.tolist())
    assert set(np.flatnonzero(flags).tolist()) <= kept


def _principal_ideal(s, a: int) -> list[int]:
    """S^1 a S^1."""
    t = s.table
    sa, as_ = t[:, a], t[a, :]
    return sorted({a} | set(sa.tolist()) | set(as_.tolist()) | set(t[sa, :].ravel().tolist()))


def check_extend_ideal_hom(s, k: int, a: int, auto: int) -> None:
    """s x G projects onto G; restricting the projection (twisted by an
    automorphism) to an ideal I x G and extending must give the projection back."""
    g = small_groups()[k]
    alpha = automorphism_maps(k)[auto % len(automorphism_maps(k))]
    x = direct_product(s, g)
    m = g.order
    ideal = sorted(u * m + h for u in _principal_ideal(s, a % s.order) for h in range(m))
    proj = np.array([alpha[y % m] for y in range(x.order)])
    pi = Morphism(x, g, proj[ideal], kind="hom", support=tuple(ideal))
    hat = extend_ideal_hom(x, ideal, g, pi)
    assert np.array_equal(hat.images, proj)
    tab, gt = x.table, g.table
    assert np.array_equal(hat.images[tab], gt[hat.images[:, None], hat.images[None, :]])


def check_split_product_hom(s, t, k: int, auto: int) -> None:
    """pi((a,h1),(b,h2)) = alpha(h1 h2) on (s x G) x (t x G) for abelian G,
    or the first coordinate for S3; the split must reproduce both parts."""
    g = small_groups()[k]
    alpha = automorphism_maps(k)[auto % len(automorphism_maps(k))]
    m = g.order
    sg, tg = direct_product(s, g), direct_product(t, g)
    big = direct_product(sg, tg)
    n2 = tg.order
    abelian = np.array_equal(g.table, g.table.T)
    img = []
    for x in range(big.order):
        u, v = divmod(x, n2)
        h1, h2 = u % m, v % m
        img.append(alpha[g.table[h1, h2]] if abelian else alpha[h1])
    pi = Morphism(big, g, img, kind="hom")
    ps, pt = split_product_hom(sg, tg, g, pi)
    want_s = [alpha[u % m] for u in range(sg.order)]
    want_t = [alpha[v % m] if abelian else alpha[g.identity] for v in range(tg.order)]
    assert ps.images.tolist() == want_s
    assert pt.images.tolist() == want_t
    for u in range(sg.order):
        for v in range(tg.order):
            a, b = ps.images[u], pt.images[v]
            assert g.table[a, b] == g.table[b, a] == pi.images[u * n2 + v]


def check_null_factor_cross(s, kappa: int, catalog_handle) -> None:
    a = null_factor(s, kappa)
    b = direct_factor(s, null_semigroup(kappa), catalog_handle)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.verify() and isomorphic(direct_product(a.left_factor, a.right_factor), s) is not None


def semigroup_up_to_8(i: int, j: int):
    """Catalog semigroup i, times catalog semigroup j when the product stays within order 8."""
    cat = catalog()
    s = cat[i % len(cat)]
    t = cat[j % len(cat)]
    if s.order * t.order <= 8:
        return direct_product(s, t)
    return s


@functools.lru_cache(maxsize=None)
def anti_catalog():
    return enumerate_semigroups(4, "anti")
