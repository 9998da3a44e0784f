"""Self-contained JSON certificates and their independent re-verification.

A certificate is a plain dict with a ``type`` key and every table it talks
about inlined, so it can be checked with nothing but the stored data. The
checks deliberately avoid the search code that produced the certificate: they
rebuild carriers with the kernel, validate maps with ``Morphism`` and use
direct table arithmetic for closure and normality. The only exceptions are
negative claims ("X is not a subquotient / direct factor of Y"), which have no
short witness and are re-decided by rerunning the exhaustive search.
"""

from __future__ import annotations

from typing import Any, Callable

import numpy as np

from .errors import ForgeError
from .kernel import FiniteGroup, FiniteSemigroup, Morphism, as_group, direct_product, validate_semigroup

__all__ = ["table_json", "semigroup_from_json", "group_from_json", "check_certificate",
           "CHECKERS"]


def table_json(s: FiniteSemigroup) -> list[list[int]]:
    return s.table.tolist()


def semigroup_from_json(t) -> FiniteSemigroup:
    return validate_semigroup(np.asarray(t))


def group_from_json(t) -> FiniteGroup:
    return as_group(semigroup_from_json(t))


def _fold_product(parts: list[FiniteSemigroup]) -> FiniteSemigroup:
    out = parts[0]
    for p in parts[1:]:
        out = direct_product(out, p)
    return out


def _is_subgroup(g: FiniteGroup, members) -> bool:
    m = np.unique(np.asarray(members, dtype=np.int64))
    if len(m) == 0 or g.identity not in set(m.tolist()):
        return False
    inside = np.zeros(g.order, dtype=bool)
    inside[m] = True
    return bool(inside[g.table[np.ix_(m, m)]].all() and inside[g.inverses[m]].all())


def _is_normal(g: FiniteGroup, members) -> bool:
    m = np.asarray(members, dtype=np.int64)
    inside = np.zeros(g.order, dtype=bool)
    inside[m] = True
    t = g.table
    conj = t[t[:, m], g.inverses[:, None]]      # t x t^-1 over all t, x in m
    return _is_subgroup(g, members) and bool(inside[conj].all())


def _normal_closure(g: FiniteGroup, x: int) -> np.ndarray:
    t, inv = g.table, g.inverses
    inside = np.zeros(g.order, dtype=bool)
    inside[g.identity] = True
    frontier = np.array([x])
    while len(frontier):
        inside[frontier] = True
        cur = np.flatnonzero(inside)
        conj = np.unique(t[t[:, frontier], inv[:, None]])
        prods = np.unique(t[np.ix_(cur, cur)])
        new = np.union1d(conj, prods)
        frontier = new[~inside[new]]
    return np.flatnonzero(inside)


def _check_iso(dom: FiniteSemigroup, cod: FiniteSemigroup, images, kind="isomorphism") -> None:
    Morphism(dom, cod, images, kind=kind)


# --- individual checks; each raises on failure --------------------------------

def _factorization(c: dict) -> None:
    g = semigroup_from_json(c["subject"])
    factors = [semigroup_from_json(f) for f in c["factors"]]
    if len(factors) < 2 or any(f.order < 2 for f in factors):
        raise ForgeError("need at least two nontrivial factors")
    _check_iso(_fold_product(factors), g, c["iso"])


def _indecomposable(c: dict) -> None:
    from .groups import _split
    g = group_from_json(c["subject"])
    if g.order < 2 or _split(g) is not None:
        raise ForgeError("group decomposes")


def _proper_normal(c: dict) -> None:
    g = group_from_json(c["subject"])
    m = c["members"]
    if not (1 < len(set(m)) < g.order) or not _is_normal(g, m):
        raise ForgeError("not a proper nontrivial normal subgroup")


def _simple(c: dict) -> None:
    g = group_from_json(c["subject"])
    if g.order < 2:
        raise ForgeError("trivial group")
    for x in range(g.order):
        if x != g.identity and len(_normal_closure(g, x)) != g.order:
            raise ForgeError(f"normal closure of {x} is proper")


def _monolith_ok(g: FiniteGroup, members) -> None:
    m = set(int(x) for x in members)
    if len(m) < 2 or not _is_normal(g, sorted(m)):
        raise ForgeError("monolith is not a nontrivial normal subgroup")
    for x in range(g.order):
        if x != g.identity and not m <= set(_normal_closure(g, x).tolist()):
            raise ForgeError(f"normal closure of {x} misses the monolith")


def _monolith(c: dict) -> None:
    _monolith_ok(group_from_json(c["subject"]), c["members"])


def _two_minimal_normals(c: dict) -> None:
    g = group_from_json(c["subject"])
    n1, n2 = (set(int(x) for x in m) for m in c["normals"])
    if n1 == n2 or n1 & n2 != {g.identity}:
        raise ForgeError("normal subgroups must be distinct and meet trivially")
    for m in (n1, n2):
        if not _is_normal(g, sorted(m)):
            raise ForgeError("not normal")
        for y in m - {g.identity}:
            if set(_normal_closure(g, y).tolist()) != m:
                raise ForgeError(f"normal subgroup containing {y} is not minimal")
    qs = [group_from_json(q) for q in c["quotients"]]
    for q, pi, m in zip(qs, c["projections"], (n1, n2)):
        if q.order >= g.order:
            raise ForgeError("quotient is not smaller than the group")
        hom = Morphism(g, q, pi, kind="surjection")
        if set(np.flatnonzero(hom.images == q.identity).tolist()) != m:
            raise ForgeError("projection kernel differs from the normal subgroup")
    emb = Morphism(g, direct_product(*qs), c["embedding"], kind="embedding")
    want = np.asarray(c["projections"][0]) * qs[1].order + np.asarray(c["projections"][1])
    if not np.array_equal(emb.images, want):
        raise ForgeError("embedding is not the product of the projections")


def _rhodes_sufficient(c: dict) -> None:
    g = group_from_json(c["subject"])
    case = c["case"]
    if case == "iii":
        n = g.order
        p = next(d for d in range(2, n + 1) if n % d == 0)
        k = n
        while k % p == 0:
            k //= p
        if k != 1 or g.element_orders().max() != n:
            raise ForgeError("not cyclic of prime-power order")
        return
    _monolith_ok(g, c["monolith"])
    m = np.asarray(c["monolith"])
    if case == "i":
        if np.array_equal(g.table[np.ix_(m, m)], g.table[np.ix_(m, m)].T):
            raise ForgeError("monolith is commutative")
    elif case == "ii":
        k = c["complement"]
        if not _is_subgroup(g, k) or set(k) & set(c["monolith"]) != {g.identity} \
                or len(set(k)) * len(m) != g.order:
            raise ForgeError("not a complement of the monolith")
    else:
        raise ForgeError(f"unknown case {case!r}")


def _subquotient_data(amb: FiniteGroup, target: FiniteGroup, c: dict) -> None:
    from .groups import subquotient_group
    sub = c["subgroup"]
    if not _is_subgroup(amb, sub):
        raise ForgeError("subgroup is not closed")
    if not set(c["kernel"]) <= set(sub):
        raise ForgeError("kernel is not inside the subgroup")
    q = subquotient_group(amb, sub, c["kernel"])
    _check_iso(q, target, c["iso"])


def _subquotient(c: dict) -> None:
    _subquotient_data(group_from_json(c["ambient"]), group_from_json(c["target"]), c)


def _not_subquotient(h: FiniteGroup, g: FiniteGroup) -> None:
    if g.order % h.order == 0:
        from .groups import is_subquotient
        if is_subquotient(h, g) is not None:
            raise ForgeError("claimed non-subquotient is a subquotient")


def _not_subquotient_cert(c: dict) -> None:
    _not_subquotient(group_from_json(c["target"]), group_from_json(c["ambient"]))


def _direct_product_subquotient(c: dict) -> None:
    g = group_from_json(c["subject"])
    f0, f1 = (group_from_json(f) for f in c["factors"])
    _subquotient_data(direct_product(f0, f1), g, c)
    for f in (f0, f1):
        _not_subquotient(g, f)


def _exhaustion(c: dict) -> None:
    if "bound" not in c:
        raise ForgeError("exhaustion record without a bound")


def _factor_witness(c: dict) -> None:
    s = semigroup_from_json(c["subject"])
    left, right = semigroup_from_json(c["left"]), semigroup_from_json(c["right"])
    _check_iso(direct_product(left, right), s, c["iso"])


def _null_refusal_ok(s: FiniteSemigroup, kappa: int, cls: list[int]) -> None:
    """One action class whose size or product count rules out Null(kappa)."""
    t = s.table
    members = sorted(set(int(x) for x in cls))
    x0 = members[0]
    both = np.concatenate([t, t.T], axis=1)
    same = np.flatnonzero((both == both[x0]).all(axis=1)).tolist()
    if same != members:
        raise ForgeError("listed set is not an action class")
    products = set(np.unique(t).tolist())
    k = sum(1 for x in members if x in products)
    size = len(members)
    if size % (kappa + 1) == 0 and size // (kappa + 1) >= k:
        raise ForgeError("class satisfies the criterion")


def _null_refusal(c: dict) -> None:
    _null_refusal_ok(semigroup_from_json(c["subject"]), int(c["kappa"]), c["class"])


def _not_factor(x: FiniteSemigroup, y: FiniteSemigroup, refusal: dict) -> None:
    if refusal.get("type") == "null_refusal":
        if semigroup_from_json(refusal["subject"]) != y:
            raise ForgeError("refusal is about a different semigroup")
        _null_refusal_ok(y, int(refusal["kappa"]), refusal["class"])
        if x.order != int(refusal["kappa"]) + 1 or np.any(x.table != x.table[0, 0]):
            raise ForgeError("refusal kappa does not match X")
        return
    if y.order % x.order:
        return
    from .structure import direct_factor
    if direct_factor(y, x) is not None:
        raise ForgeError("X is a direct factor after all")


def _tarski_counterexample(c: dict) -> None:
    x, t = semigroup_from_json(c["x"]), semigroup_from_json(c["t"])
    y0, y1 = semigroup_from_json(c["y0"]), semigroup_from_json(c["y1"])
    if min(y0.order, y1.order) < 2:
        raise ForgeError("factors must be nontrivial")
    _check_iso(direct_product(x, t), direct_product(y0, y1), c["iso"])
    for y, r in zip((y0, y1), c["refusals"]):
        _not_factor(x, y, r)


CHECKERS: dict[str, Callable[[dict], None]] = {
    "factorization": _factorization,
    "indecomposable": _indecomposable,
    "proper_normal_subgroup": _proper_normal,
    "simple": _simple,
    "monolith": _monolith,
    "two_minimal_normals": _two_minimal_normals,
    "rhodes_sufficient": _rhodes_sufficient,
    "direct_product_subquotient": _direct_product_subquotient,
    "subquotient": _subquotient,
    "not_subquotient": _not_subquotient_cert,
    "exhaustion": _exhaustion,
    "factor_witness": _factor_witness,
    "null_refusal": _null_refusal,
    "tarski_counterexample": _tarski_counterexample,
}


def check_certificate(cert: dict[str, Any]) -> tuple[bool, str]:
    """(passed, message). Never raises on bad certificates."""
    kind = cert.get("type")
    fn = CHECKERS.get(kind)
    if fn is None:
        return False, f"unknown certificate type {kind!r}"
    try:
        fn(cert)
    except (ForgeError, ValueError, KeyError, IndexError, TypeError, StopIteration) as exc:
        return False, f"{kind}: {exc}"
    return True, f"{kind}: ok"
