"""Semigroup structure: action equivalence, product elements, skeleta, direct
factors (general and null), cancellativity, and extension of homomorphisms
from an ideal into a group.

Ties are always broken towards the lowest element index, so every witness
returned here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .config import caps
from .constructors import adjoin_identity, null_semigroup
from .errors import CatalogInsufficient, ForgeError, NotAHom, NotAnIdeal
from .iso import action_class_keys, fingerprint, isomorphic
from .kernel import (FiniteGroup, FiniteSemigroup, Morphism, direct_product,
                     subsemigroup)

if TYPE_CHECKING:
    from .enumeration import CatalogHandle

__all__ = [
    "ActionClassing", "FactorWitness", "NullFactorRefusal", "Cancellativity",
    "action_classes", "skeleton", "null_factor", "null_factor_refusal",
    "direct_factor", "cancellativity", "extend_ideal_hom", "split_product_hom",
    "is_null",
]


@dataclass(frozen=True)
class ActionClassing:
    """Action-equivalence classes, numbered by smallest member."""

    labels: np.ndarray                      # class number of each element
    classes: tuple[tuple[int, ...], ...]
    product_flags: np.ndarray
    per_class_product_count: tuple[int, ...]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.classes)


def action_classes(s: FiniteSemigroup) -> ActionClassing:
    labels = action_class_keys(s)
    prod = s.product_flags()
    classes = tuple(tuple(np.flatnonzero(labels == c).tolist()) for c in range(int(labels.max()) + 1))
    counts = tuple(int(prod[list(c)].sum()) for c in classes)
    return ActionClassing(labels, classes, prod, counts)


def is_null(s: FiniteSemigroup) -> bool:
    """All products equal."""
    return bool(np.all(s.table == s.table[0, 0]))


def skeleton(s: FiniteSemigroup, representative=min) -> tuple[FiniteSemigroup, Morphism]:
    """All product elements plus one element of each class without products.

    ``representative`` picks the element kept from such a class (default: the
    lowest index). Returns the subsemigroup and its inclusion.
    """
    ac = action_classes(s)
    keep = set(np.flatnonzero(ac.product_flags).tolist())
    for members, count in zip(ac.classes, ac.per_class_product_count):
        if count == 0:
            keep.add(int(representative(members)))
    return subsemigroup(s, keep, label=f"skel({s.label})" if s.label else None)


@dataclass(frozen=True)
class FactorWitness:
    """``iso`` maps direct_product(left_factor, right_factor) onto the target."""

    left_factor: FiniteSemigroup
    right_factor: FiniteSemigroup
    iso: Morphism

    @property
    def target(self) -> FiniteSemigroup:
        return self.iso.codomain

    def verify(self) -> bool:
        prod = direct_product(self.left_factor, self.right_factor)
        m = Morphism(prod, self.target, self.iso.images, kind="isomorphism")
        return m.kind == "isomorphism"

    def to_dict(self) -> dict:
        return {"left": self.left_factor.to_dict(), "right": self.right_factor.to_dict(),
                "iso": self.iso.images.tolist()}


@dataclass(frozen=True)
class NullFactorRefusal:
    """Why Null(kappa) is not a direct factor: the first class breaking the count."""

    kappa: int
    class_members: tuple[int, ...]
    size: int
    product_count: int

    @property
    def reason(self) -> str:
        k1 = self.kappa + 1
        if self.size % k1:
            return f"class size {self.size} is not a multiple of {k1}"
        return (f"class size {self.size} = {k1}*{self.size // k1} but it holds "
                f"{self.product_count} product elements")

    def to_dict(self) -> dict:
        return {"kappa": self.kappa, "class": list(self.class_members), "size": self.size,
                "products": self.product_count, "reason": self.reason}


def null_factor_refusal(s: FiniteSemigroup, kappa: int) -> NullFactorRefusal | None:
    """The first action class violating |A| = (kappa+1) m with m >= #products in A."""
    if kappa < 1:
        raise ValueError("kappa must be positive")
    ac = action_classes(s)
    for members, count in zip(ac.classes, ac.per_class_product_count):
        size = len(members)
        if size % (kappa + 1) or size // (kappa + 1) < count:
            return NullFactorRefusal(kappa, members, size, count)
    return None


def null_factor(s: FiniteSemigroup, kappa: int) -> FactorWitness | None:
    """Decompose s as S0 x Null(kappa) when the class-count criterion holds.

    Only the finite form of the criterion is used: every action class A must
    have size (kappa+1) m with m at least the number of product elements of A.
    S0 takes, from each class, its product elements topped up with the lowest
    non-products to m elements.
    """
    if null_factor_refusal(s, kappa) is not None:
        return None
    ac = action_classes(s)
    prod = ac.product_flags
    n = s.order
    nul = null_semigroup(kappa)
    keep: list[int] = []
    rest: dict[int, list[int]] = {}
    for members in ac.classes:
        m = len(members) // (kappa + 1)
        a0 = [x for x in members if prod[x]]
        a0 += [x for x in members if not prod[x]][: m - len(a0)]
        keep.extend(a0)
        rest[members[0]] = [x for x in members if x not in set(a0)]
    s0, inc = subsemigroup(s, keep)
    images = np.empty(n, dtype=np.int64)
    # (u, z) -> u ; (u, a_i) -> i-th unused element of u's class, in lexicographic order
    for members in ac.classes:
        a0 = sorted(x for x in members if x in set(keep))
        a1 = rest[members[0]]
        it = iter(a1)
        for u in a0:
            pu = int(np.searchsorted(inc.images, u))
            images[pu * (kappa + 1)] = u
            for i in range(1, kappa + 1):
                images[pu * (kappa + 1) + i] = next(it)
    prod_sg = direct_product(s0, nul)
    iso = Morphism(prod_sg, s, images, kind="isomorphism")
    return FactorWitness(s0, nul, iso)


def _cheap_invariants(s: FiniteSemigroup) -> tuple[int, int, int]:
    """Counts that multiply under direct products."""
    inv = s._cache.get("cheap_invariants")
    if inv is None:
        inv = s._cache["cheap_invariants"] = (len(s.idempotents()), int(s.product_flags().sum()),
                                              int(action_class_keys(s).max()) + 1)
    return inv


def _candidate_factors(order: int, catalog: "CatalogHandle | None") -> list[FiniteSemigroup]:
    from .enumeration import catalog_candidates
    reach = max(catalog.max_order if catalog is not None else 0, caps.on_the_fly_order)
    if order > reach:
        raise CatalogInsufficient(order, reach)
    return catalog_candidates(order, catalog)


def direct_factor(s: FiniteSemigroup, p: FiniteSemigroup,
                  catalog: "CatalogHandle | None" = None) -> FactorWitness | None:
    """Search Q with p x Q isomorphic to s; Q ranges over every semigroup of
    order |s|/|p|, in catalog order.

    Raises CatalogInsufficient when that order lies beyond both the catalog and
    the on-the-fly enumeration limit; None is only returned after exhausting
    every candidate.
    """
    if s.order % p.order:
        return None
    k = s.order // p.order
    cands = _candidate_factors(k, catalog)
    target = _cheap_invariants(s)
    pinv = _cheap_invariants(p)
    digest = fingerprint(s).digest
    for q in cands:
        qinv = _cheap_invariants(q)
        if tuple(a * b for a, b in zip(pinv, qinv)) != target:
            continue
        prod = direct_product(p, q)
        if fingerprint(prod).digest != digest:
            continue
        iso = isomorphic(prod, s)
        if iso is not None:
            return FactorWitness(p, q, iso)
    return None


@dataclass(frozen=True)
class Cancellativity:
    left: bool
    right: bool
    weak: bool


def cancellativity(s: FiniteSemigroup) -> Cancellativity:
    """Right: s s'' = s' s'' forces s = s' (columns injective).
    Left: s'' s = s'' s' forces s = s' (rows injective).
    Weak: no two distinct elements are action equivalent."""
    t = s.table
    n = s.order
    rows_inj = all(len(np.unique(r)) == n for r in t)
    cols_inj = all(len(np.unique(c)) == n for c in t.T)
    return Cancellativity(left=rows_inj, right=cols_inj,
                          weak=action_classes(s).is_discrete())


def _check_ideal(s: FiniteSemigroup, ideal: Sequence[int]) -> list[int]:
    idl = sorted(set(int(x) for x in ideal))
    if not idl:
        raise NotAnIdeal((-1, -1))
    inside = np.zeros(s.order, dtype=bool)
    inside[idl] = True
    t = s.table
    for a in idl:
        bad = np.flatnonzero(~inside[t[:, a]])
        if bad.size:
            raise NotAnIdeal((int(bad[0]), a))
        bad = np.flatnonzero(~inside[t[a, :]])
        if bad.size:
            raise NotAnIdeal((a, int(bad[0])))
    return idl


def extend_ideal_hom(s: FiniteSemigroup, ideal: Sequence[int], g: FiniteGroup,
                     pi: Morphism) -> Morphism:
    """Extend a homomorphism from an ideal of s into a group to all of s.

    Uses pi_hat(u) = pi(x)^-1 pi(x u x) pi(x)^-1 with x the lowest ideal
    element, and checks that a second choice of x gives the same map.
    """
    idl = _check_ideal(s, ideal)
    if pi.domain is not s or pi.codomain is not g:
        if pi.domain != s or pi.codomain != g:
            raise NotAHom("pi must map the given semigroup into the given group")
    if pi.support is None:
        if len(idl) != s.order:
            raise NotAHom("pi is total but the ideal is proper")
        partial = pi
    else:
        if sorted(pi.support) != idl:
            raise NotAHom("pi is not defined exactly on the ideal")
        partial = pi
    full = partial.as_array()
    r, gr = s.rows, g.rows

    def extend_with(x: int) -> np.ndarray:
        px_inv = g.inv(int(full[x]))
        out = np.empty(s.order, dtype=np.int64)
        for u in range(s.order):
            xux = r[r[x][u]][x]
            out[u] = gr[gr[px_inv][int(full[xux])]][px_inv]
        return out

    hat = extend_with(idl[0])
    if len(idl) > 1 and not np.array_equal(hat, extend_with(idl[1])):
        raise ForgeError("extension depends on the chosen ideal element")
    if not np.array_equal(hat[idl], full[idl]):
        raise ForgeError("extension does not agree with pi on the ideal")
    return Morphism(s, g, hat)


def split_product_hom(s: FiniteSemigroup, t: FiniteSemigroup, g: FiniteGroup,
                      pi: Morphism) -> tuple[Morphism, Morphism]:
    """Write a homomorphism S x T -> G as pi(a, b) = pi_S(a) pi_T(b).

    The product sits as an ideal in S^1 x T^1; pi_S and pi_T are the extension
    restricted to (a, 1) and (1, b). The two images are checked to commute.
    """
    n, m = s.order, t.order
    if pi.domain.order != n * m:
        raise NotAHom("pi is not defined on S x T")
    s1, t1 = adjoin_identity(s), adjoin_identity(t)
    big = direct_product(s1, t1)
    ideal = [a * (m + 1) + b for a in range(n) for b in range(m)]
    pi_on_ideal = Morphism(big, g, [pi(a * m + b) for a in range(n) for b in range(m)],
                           kind="hom", support=tuple(ideal))
    hat = extend_ideal_hom(big, ideal, g, pi_on_ideal)
    pi_s = Morphism(s, g, [hat(a * (m + 1) + m) for a in range(n)], kind="hom")
    pi_t = Morphism(t, g, [hat(n * (m + 1) + b) for b in range(m)], kind="hom")
    gr = g.rows
    for a in range(n):
        for b in range(m):
            x, y = int(pi_s.images[a]), int(pi_t.images[b])
            if gr[x][y] != pi(a * m + b):
                raise ForgeError("pi_S(a) pi_T(b) != pi(a, b)")
            if gr[x][y] != gr[y][x]:
                raise ForgeError("images of pi_S and pi_T do not commute")
    return pi_s, pi_t

