"""Carrier types for finite algebras given by composition tables.

Elements are always the dense indices ``0..n-1``; element names are display
metadata only. Values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import caps
from .errors import (MalformedTable, NonAssociative, NotAGroup, NotAHom,
                     SizeOverflow)

__all__ = [
    "OpTable", "FiniteSemigroup", "FiniteGroup", "Morphism",
    "validate_semigroup", "as_group", "direct_product", "relabel",
    "subsemigroup", "first_associativity_violation",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OpTable:
    """A raw ``n x n`` composition table, not yet known to be associative."""

    table: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        t = np.asarray(self.table)
        if t.ndim == 1:
            n = int(round(len(t) ** 0.5))
            if n * n != len(t):
                raise MalformedTable(f"flat table of length {len(t)} is not square")
            t = t.reshape(n, n)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise MalformedTable(f"table of shape {t.shape} is not square")
        n = t.shape[0]
        if n < 1:
            raise MalformedTable("order must be at least 1")
        if not np.issubdtype(t.dtype, np.integer):
            if t.size and not np.all(np.equal(np.mod(t, 1), 0)):
                raise MalformedTable("table entries must be integers")
        t = t.astype(np.int32)
        bad = np.argwhere((t < 0) | (t >= n))
        if bad.size:
            i, j = bad[0]
            raise MalformedTable(f"entry ({i},{j}) = {t[i, j]} outside [0, {n})")
        if self.names is not None and len(self.names) != n:
            raise MalformedTable(f"{len(self.names)} names for {n} elements")
        object.__setattr__(self, "table", _freeze(t))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(str(x) for x in self.names))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @classmethod
    def from_flat(cls, order: int, flat: Sequence[int],
                  names: Sequence[str] | None = None) -> "OpTable":
        if len(flat) != order * order:
            raise MalformedTable(f"expected {order * order} entries, got {len(flat)}")
        return cls(np.asarray(flat).reshape(order, order), names)


def first_associativity_violation(table: np.ndarray) -> tuple[int, int, int] | None:
    """Lexicographically first (i, j, k) with (ij)k != i(jk), or None."""
    t = np.asarray(table)
    for i in range(t.shape[0]):
        left = t[t[i]]      # [j, k] -> (i j) k
        right = t[i][t]     # [j, k] -> i (j k)
        bad = np.argwhere(left != right)
        if bad.size:
            return i, int(bad[0][0]), int(bad[0][1])
    return None


class FiniteSemigroup:
    """An associative composition table. Construction verifies associativity."""

    __slots__ = ("table", "names", "label", "_cache")

    def __init__(self, table, names: Sequence[str] | None = None,
                 label: str | None = None, *, check: bool = True):
        if isinstance(table, OpTable):
            names = table.names if names is None else names
            table = table.table
        op = OpTable(table, tuple(names) if names is not None else None)
        if check:
            bad = first_associativity_violation(op.table)
            if bad is not None:
                raise NonAssociative(*bad)
        self.table = op.table
        self.names = op.names
        self.label = label
        self._cache: dict = {}

    # basic access -----------------------------------------------------------
    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists (fast scalar lookups)."""
        r = self._cache.get("rows")
        if r is None:
            r = self._cache["rows"] = self.table.tolist()
        return r

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def index(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    @property
    def key(self) -> bytes:
        k = self._cache.get("key")
        if k is None:
            k = self._cache["key"] = self.order.to_bytes(4, "little") + self.table.tobytes()
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSemigroup) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<{type(self).__name__}{tag} order={self.order}>"

    # structure used everywhere ---------------------------------------------
    def idempotents(self) -> np.ndarray:
        return np.flatnonzero(self.table[np.arange(self.order), np.arange(self.order)]
                              == np.arange(self.order))

    def product_flags(self) -> np.ndarray:
        f = self._cache.get("product_flags")
        if f is None:
            f = np.zeros(self.order, dtype=bool)
            f[np.unique(self.table)] = True
            f = self._cache["product_flags"] = _freeze(f)
        return f

    def identity_element(self) -> int | None:
        n = self.order
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], ar) and np.array_equal(self.table[:, e], ar):
                return e
        return None

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def to_dict(self) -> dict:
        d = {"order": self.order, "table": self.table.ravel().tolist()}
        if self.names is not None:
            d["names"] = list(self.names)
        return d


class FiniteGroup(FiniteSemigroup):
    """A semigroup with identity and inverses, both verified at construction."""

    __slots__ = ("identity", "inverses")

    def __init__(self, table, names: Sequence[str] | None = None,
                 label: str | None = None, *, check: bool = True):
        super().__init__(table, names, label, check=check)
        e = self.identity_element()
        if e is None:
            raise NotAGroup("no identity element")
        t = self.table
        n = self.order
        inv = np.full(n, -1, dtype=np.int64)
        xs, ys = np.nonzero(t == e)
        inv[xs] = ys
        if np.any(inv < 0) or not np.all(t[inv, np.arange(n)] == e):
            missing = int(np.flatnonzero((inv < 0) | (t[np.maximum(inv, 0), np.arange(n)] != e))[0])
            raise NotAGroup(f"element {missing} has no two-sided inverse")
        self.identity = e
        self.inverses = _freeze(inv)

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        r = self.rows
        return r[r[g][x]][int(self.inverses[g])]

    def element_order(self, x: int) -> int:
        r = self.rows
        k, y = 1, x
        while y != self.identity:
            y = r[y][x]
            k += 1
        return k

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        r = self.rows
        y = self.identity
        for _ in range(k):
            y = r[y][x]
        return y

    def element_orders(self) -> np.ndarray:
        o = self._cache.get("element_orders")
        if o is None:
            o = self._cache["element_orders"] = _freeze(
                np.array([self.element_order(x) for x in range(self.order)]))
        return o


def validate_semigroup(t: OpTable | np.ndarray | Sequence) -> FiniteSemigroup:
    """Check a table and return it as a semigroup.

    Raises MalformedTable for out-of-range entries and NonAssociative naming the
    lexicographically first violating triple.
    """
    return FiniteSemigroup(t)


def as_group(s: FiniteSemigroup) -> FiniteGroup:
    if isinstance(s, FiniteGroup):
        return s
    return FiniteGroup(s.table, s.names, s.label, check=False)


def _like(s: FiniteSemigroup, table: np.ndarray, names=None, label=None) -> FiniteSemigroup:
    """Wrap an already-associative table, keeping group-ness when it holds."""
    if isinstance(s, FiniteGroup):
        return FiniteGroup(table, names, label, check=False)
    return FiniteSemigroup(table, names, label, check=False)


def direct_product(s: FiniteSemigroup, t: FiniteSemigroup, *,
                   cap: int | None = None) -> FiniteSemigroup:
    """Componentwise product; the pair (i, j) is element ``i * |t| + j``."""
    cap = caps.carrier_cap if cap is None else cap
    n, m = s.order, t.order
    if n * m > cap:
        raise SizeOverflow(f"product order {n * m} exceeds carrier cap {cap}")
    a = s.table.astype(np.int32)[:, None, :, None] * m + t.table.astype(np.int32)[None, :, None, :]
    table = a.reshape(n * m, n * m)
    names = None
    if s.names is not None or t.names is not None:
        names = [f"({s.name(i)},{t.name(j)})" for i in range(n) for j in range(m)]
    label = f"{s.label}x{t.label}" if s.label and t.label else None
    if isinstance(s, FiniteGroup) and isinstance(t, FiniteGroup):
        return FiniteGroup(table, names, label, check=False)
    return FiniteSemigroup(table, names, label, check=False)


def relabel(s: FiniteSemigroup, perm: Sequence[int]) -> FiniteSemigroup:
    """Isomorphic copy in which old element x becomes ``perm[x]``."""
    p = np.asarray(perm)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    table = p[s.table[np.ix_(inv, inv)]]
    names = None if s.names is None else [s.names[i] for i in inv]
    return _like(s, table, names, s.label)


def subsemigroup(s: FiniteSemigroup, members: Iterable[int],
                 label: str | None = None) -> tuple[FiniteSemigroup, "Morphism"]:
    """The closed subset ``members`` (relabelled in ascending order) and its inclusion."""
    mem = np.array(sorted(set(int(x) for x in members)))
    pos = np.full(s.order, -1)
    pos[mem] = np.arange(len(mem))
    sub = s.table[np.ix_(mem, mem)]
    if np.any(pos[sub] < 0):
        i, j = np.argwhere(pos[sub] < 0)[0]
        raise MalformedTable(f"subset not closed: {mem[i]}*{mem[j]} = {sub[i, j]}")
    names = None if s.names is None else [s.names[i] for i in mem]
    table = pos[sub]
    if isinstance(s, FiniteGroup) and s.identity in set(mem.tolist()):
        out: FiniteSemigroup = FiniteGroup(table, names, label, check=False)
    else:
        out = FiniteSemigroup(table, names, label, check=False)
    return out, Morphism(out, s, mem, kind="embedding")


_KINDS = ("hom", "embedding", "surjection", "isomorphism", "anti-isomorphism")


@dataclass(frozen=True, eq=False)
class Morphism:
    """A map between carriers, checked for compatibility when built.

    ``images[k]`` is the image of ``support[k]`` when ``support`` is given (a
    closed sub-carrier of the domain), otherwise of element ``k``. The kind is
    inferred when omitted; an explicit kind other than ``hom`` must match the
    map's injectivity/surjectivity.
    """

    domain: FiniteSemigroup
    codomain: FiniteSemigroup
    images: np.ndarray
    kind: str | None = None
    support: tuple[int, ...] | None = None
    _lookup: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        img = np.asarray(self.images, dtype=np.int64).ravel()
        object.__setattr__(self, "images", _freeze(img))
        if self.support is not None:
            object.__setattr__(self, "support", tuple(int(x) for x in self.support))
        src = self.source_elements
        if len(img) != len(src):
            raise NotAHom(f"{len(img)} images for {len(src)} source elements")
        if img.size and (img.min() < 0 or img.max() >= self.codomain.order):
            raise NotAHom("image outside the codomain")
        injective = len(np.unique(img)) == len(img)
        surjective = len(np.unique(img)) == self.codomain.order
        inferred = ("isomorphism" if injective and surjective else
                    "embedding" if injective else
                    "surjection" if surjective else "hom")
        kind = self.kind or inferred
        if kind not in _KINDS:
            raise ValueError(f"unknown morphism kind {kind!r}")
        need_inj = kind in ("embedding", "isomorphism", "anti-isomorphism")
        need_sur = kind in ("surjection", "isomorphism", "anti-isomorphism")
        if (need_inj and not injective) or (need_sur and not surjective):
            raise NotAHom(f"map is not a valid {kind}")
        object.__setattr__(self, "kind", kind)
        self._check_compatible()

    @property
    def source_elements(self) -> np.ndarray:
        if self.support is None:
            return np.arange(self.domain.order)
        return np.asarray(self.support, dtype=np.int64)

    def _check_compatible(self) -> None:
        src = self.source_elements
        full = np.full(self.domain.order, -1, dtype=np.int64)
        full[src] = self.images
        prods = self.domain.table[np.ix_(src, src)]
        lhs = full[prods]
        if np.any(lhs < 0):
            i, j = np.argwhere(lhs < 0)[0]
            raise NotAHom("support is not closed under the operation",
                          (int(src[i]), int(src[j])))
        ct = self.codomain.table
        if self.kind == "anti-isomorphism":
            rhs = ct[np.ix_(self.images, self.images)].T
        else:
            rhs = ct[np.ix_(self.images, self.images)]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j = bad[0]
            raise NotAHom(f"f({src[i]}*{src[j]}) != f({src[i]})*f({src[j]})",
                          (int(src[i]), int(src[j])))

    def __call__(self, x: int) -> int:
        if self.support is None:
            return int(self.images[x])
        if not self._lookup:
            self._lookup.update(zip(self.support, self.images.tolist()))
        return self._lookup[x]

    def as_array(self) -> np.ndarray:
        """Images indexed by domain element (-1 off the support)."""
        full = np.full(self.domain.order, -1, dtype=np.int64)
        full[self.source_elements] = self.images
        return full

    def compose(self, other: "Morphism") -> "Morphism":
        """``self after other``."""
        if self.support is not None or other.support is not None:
            raise ValueError("composition is only defined for total morphisms")
        anti = (self.kind == "anti-isomorphism") != (other.kind == "anti-isomorphism")
        kind = "anti-isomorphism" if anti else None
        return Morphism(other.domain, self.codomain, self.images[other.images], kind=kind)

    def inverse(self) -> "Morphism":
        if self.kind not in ("isomorphism", "anti-isomorphism"):
            raise ValueError("only isomorphisms are invertible")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images))
        return Morphism(self.codomain, self.domain, inv, kind=self.kind)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "map": self.images.tolist()}
        if self.support is not None:
            d["support"] = list(self.support)
        return d
