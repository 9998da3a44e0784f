"""Isomorphism, anti-isomorphism and automorphisms of table algebras.

Candidates are pruned with a colour-refinement fingerprint: each element starts
with a vector of isomorphism invariants and is repeatedly recoloured by the
multiset of (colour of y, colour of xy, colour of yx) over all y. Colour ids are
ranks of sorted signatures, so two algebras with equal digests have directly
comparable colours. The search then extends partial bijections depth first,
closing them under products after every choice, so for groups it effectively
maps a generating set and lets the rest follow.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .config import caps
from .constructors import opposite
from .errors import CapExceeded
from .kernel import FiniteGroup, FiniteSemigroup, Morphism

__all__ = ["Fingerprint", "fingerprint", "isomorphic", "anti_isomorphic",
           "all_isomorphisms", "automorphisms", "AutomorphismGroup",
           "action_class_keys"]


@dataclass(frozen=True)
class Fingerprint:
    colors: np.ndarray
    digest: str
    n_colors: int


def action_class_keys(s: FiniteSemigroup) -> np.ndarray:
    """Per-element id such that equal ids <=> action equivalent (ids by first member)."""
    k = s._cache.get("action_keys")
    if k is None:
        both = np.concatenate([s.table, s.table.T], axis=1)
        _, first, inv = np.unique(both, axis=0, return_index=True, return_inverse=True)
        # renumber by smallest member so ids are canonical for the table
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        k = rank[inv.ravel()]
        k.setflags(write=False)
        s._cache["action_keys"] = k
    return k


def _initial_features(s: FiniteSemigroup) -> np.ndarray:
    t = s.table
    n = s.order
    ar = np.arange(n)
    idem = t[ar, ar] == ar
    prod = s.product_flags()
    keys = action_class_keys(s)
    class_size = np.bincount(keys)[keys]
    row_distinct = np.array([len(np.unique(r)) for r in t])
    col_distinct = np.array([len(np.unique(c)) for c in t.T])
    fixes_right = (t == ar[None, :]).sum(axis=1)   # #y with x y = y
    fixes_left = (t == ar[:, None]).sum(axis=0)    # #y with y x = y
    # size of the monogenic subsemigroup <x>
    seen = np.zeros((n, n), dtype=bool)
    cur = ar.copy()
    for _ in range(n):
        seen[ar, cur] = True
        cur = t[cur, ar]
    mono = seen.sum(axis=1)
    commuting = (t == t.T).sum(axis=1)                 # #y with x y = y x
    roots = np.bincount(t[ar, ar], minlength=n)        # #y with y y = x
    return np.stack([idem, prod, class_size, row_distinct, col_distinct,
                     fixes_right, fixes_left, mono, commuting, roots], axis=1).astype(np.int64)


def fingerprint(s: FiniteSemigroup) -> Fingerprint:
    fp = s._cache.get("fingerprint")
    if fp is not None:
        return fp
    h = hashlib.blake2b(digest_size=16)
    h.update(s.order.to_bytes(4, "little"))
    feats = _initial_features(s)
    uniq, inv = np.unique(feats, axis=0, return_inverse=True)
    colors = inv.ravel().astype(np.int64)
    h.update(uniq.tobytes())
    h.update(np.bincount(colors).tobytes())
    t = s.table
    t_t = t.T
    while True:
        k = int(colors.max()) + 1
        codes = (colors[None, :] * k + colors[t]) * k + colors[t_t]
        codes.sort(axis=1)
        sig = np.concatenate([colors[:, None], codes], axis=1)
        uniq, inv = np.unique(sig, axis=0, return_inverse=True)
        new = inv.ravel().astype(np.int64)
        h.update(uniq.tobytes())
        if len(uniq) == k:
            break
        colors = new
    fp = Fingerprint(colors, h.hexdigest(), int(colors.max()) + 1)
    s._cache["fingerprint"] = fp
    return fp


def _twin_ids(s: FiniteSemigroup) -> list[int]:
    """Non-product elements sharing an action class are interchangeable: any
    transposition of two of them is an automorphism. Returns a class id for
    such elements (-1 for the rest)."""
    keys = action_class_keys(s)
    prod = s.product_flags()
    out = [-1] * s.order
    counts = np.bincount(keys[~prod], minlength=int(keys.max()) + 1) if (~prod).any() else None
    if counts is None:
        return out
    for x in range(s.order):
        if not prod[x] and counts[keys[x]] > 1:
            out[x] = int(keys[x])
    return out


def _close(T, U, f, g, assigned, queue, cs, ct) -> bool:
    while queue:
        a = queue.pop()
        assigned.append(a)
        fa = f[a]
        Ta, Ufa = T[a], U[fa]
        for b in assigned:
            fb = f[b]
            p, q = Ta[b], Ufa[fb]
            fp = f[p]
            if fp == -1:
                if g[q] != -1 or cs[p] != ct[q]:
                    return False
                f[p] = q
                g[q] = p
                queue.append(p)
            elif fp != q:
                return False
            p, q = T[b][a], U[fb][fa]
            fp = f[p]
            if fp == -1:
                if g[q] != -1 or cs[p] != ct[q]:
                    return False
                f[p] = q
                g[q] = p
                queue.append(p)
            elif fp != q:
                return False
    return True


def _search(s: FiniteSemigroup, t: FiniteSemigroup, *, prune_twins: bool) -> Iterator[list[int]]:
    n = s.order
    if t.order != n:
        return
    fs, ft = fingerprint(s), fingerprint(t)
    if fs.digest != ft.digest:
        return
    cs, ct = fs.colors.tolist(), ft.colors.tolist()
    by_color: dict[int, list[int]] = {}
    for y, c in enumerate(ct):
        by_color.setdefault(c, []).append(y)
    size = {c: len(v) for c, v in by_color.items()}
    T, U = s.rows, t.rows
    twins = _twin_ids(t) if prune_twins else [-1] * n

    def rec(f, g, assigned):
        if len(assigned) == n:
            yield list(f)
            return
        best, best_size = -1, n + 1
        for x in range(n):
            if f[x] == -1 and size[cs[x]] < best_size:
                best, best_size = x, size[cs[x]]
        x = best
        tried = set()
        for y in by_color[cs[x]]:
            if g[y] != -1:
                continue
            tw = twins[y]
            if tw >= 0 and tw in tried:
                continue
            f2, g2, a2 = f[:], g[:], assigned[:]
            f2[x] = y
            g2[y] = x
            if _close(T, U, f2, g2, a2, [x], cs, ct):
                yield from rec(f2, g2, a2)
            if tw >= 0:
                tried.add(tw)

    yield from rec([-1] * n, [-1] * n, [])


def isomorphic(s: FiniteSemigroup, t: FiniteSemigroup) -> Morphism | None:
    """An isomorphism s -> t, or None. Complete and deterministic."""
    if s.order != t.order:
        return None
    if s == t:
        return Morphism(s, t, np.arange(s.order), kind="isomorphism")
    for images in _search(s, t, prune_twins=True):
        return Morphism(s, t, images, kind="isomorphism")
    return None


def anti_isomorphic(s: FiniteSemigroup, t: FiniteSemigroup) -> Morphism | None:
    """A bijection f with f(xy) = f(y) f(x), or None."""
    if s.order != t.order:
        return None
    for images in _search(s, opposite(t), prune_twins=True):
        return Morphism(s, t, images, kind="anti-isomorphism")
    return None


def all_isomorphisms(s: FiniteSemigroup, t: FiniteSemigroup) -> Iterator[Morphism]:
    for images in _search(s, t, prune_twins=False):
        yield Morphism(s, t, images, kind="isomorphism")


@dataclass(frozen=True)
class AutomorphismGroup:
    order: int
    generators: list[Morphism]
    elements: list[np.ndarray]


def automorphisms(g: FiniteGroup, *, cap: int | None = None) -> AutomorphismGroup:
    """All automorphisms of g, with a small generating set chosen greedily."""
    cap = caps.automorphism_cap if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds automorphism cap {cap}")
    elements = [np.asarray(f) for f in _search(g, g, prune_twins=False)]
    gens: list[np.ndarray] = []
    span = {tuple(range(g.order))}
    for a in elements:
        if tuple(a.tolist()) in span:
            continue
        gens.append(a)
        frontier = list(span)
        span = set(frontier)
        queue = [np.asarray(x) for x in frontier]
        while queue:
            x = queue.pop()
            for h in gens:
                y = tuple(h[x].tolist())
                if y not in span:
                    span.add(y)
                    queue.append(np.asarray(y))
    return AutomorphismGroup(len(elements),
                             [Morphism(g, g, a, kind="isomorphism") for a in gens],
                             elements)
