"""Group structure on Cayley tables: subgroup and normal-subgroup lattices,
quotients, monoliths, semidirect and wreath products, subquotient search and
direct decomposition.

Subsets of a group are carried as Python int bitmasks (bit x set when element x
belongs), which makes dedupe, containment and intersection one operation each.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import caps
from .errors import CapExceeded, ForgeError, NotAnAction, NotNormal
from .iso import isomorphic
from .kernel import (FiniteGroup, Morphism, direct_product, subsemigroup)
from .structure import FactorWitness

__all__ = [
    "Subgroup", "SubquotientWitness", "Decomposition",
    "mask_of", "members_of", "generate", "group_generators", "normal_closure",
    "conjugacy_classes", "subgroups", "normal_subgroups", "minimal_normal_subgroups",
    "monolith", "is_simple", "quotient", "subgroup_group", "whole", "trivial",
    "semidirect_product", "extend_action", "wreath_product", "is_subquotient",
    "direct_decomposition", "semidirect_complement", "center", "find_embedding",
    "extend_hom", "is_abelian", "subquotient_group", "make_subgroup",
    "internal_product_witness",
]


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for x in elems:
        m |= 1 << int(x)
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def generate(g: FiniteGroup, gens: Iterable[int]) -> tuple[int, list[int]]:
    """The subgroup generated by ``gens`` as (mask, element list)."""
    gens = [int(x) for x in gens]
    r = g.rows
    e = g.identity
    mask = 1 << e
    elems = [e]
    for x in elems:
        rx = r[x]
        for s in gens:
            y = rx[s]
            if not (mask >> y) & 1:
                mask |= 1 << y
                elems.append(y)
    return mask, elems


def _small_gens(g: FiniteGroup, elems: Sequence[int]) -> tuple[int, ...]:
    """Greedy generating set of the subgroup on ``elems``, largest orders first."""
    orders = g.element_orders()
    target = mask_of(elems)
    gens: list[int] = []
    mask = 1 << g.identity
    for x in sorted(elems, key=lambda y: (-int(orders[y]), y)):
        if mask == target:
            break
        if not (mask >> x) & 1:
            gens.append(x)
            mask, _ = generate(g, gens)
    return tuple(gens)


def group_generators(g: FiniteGroup) -> tuple[int, ...]:
    gens = g._cache.get("gens")
    if gens is None:
        gens = g._cache["gens"] = _small_gens(g, range(g.order))
    return gens


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent group; ``normal`` refers to that parent."""

    members: tuple[int, ...]
    normal: bool
    parent_order: int
    gens: tuple[int, ...] = field(default=(), compare=False)

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent_order // self.order

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.mask)

    def to_dict(self) -> dict:
        return {"members": list(self.members), "normal": self.normal, "order": self.order}


def _is_normal_mask(g: FiniteGroup, mask: int, gens: Sequence[int]) -> bool:
    for t in group_generators(g):
        for h in gens:
            if not (mask >> g.conj(t, h)) & 1:
                return False
    return True


def make_subgroup(g: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """Subgroup record for a subset that must already be a subgroup."""
    elems = sorted(set(int(x) for x in elems))
    mask = mask_of(elems)
    gens = _small_gens(g, elems)
    if generate(g, gens)[0] != mask:
        raise ValueError("subset is not a subgroup")
    return Subgroup(tuple(elems), _is_normal_mask(g, mask, gens), g.order, gens)


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(tuple(range(g.order)), True, g.order, group_generators(g))


def trivial(g: FiniteGroup) -> Subgroup:
    return Subgroup((g.identity,), True, g.order, ())


def normal_closure(g: FiniteGroup, elems: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Smallest normal subgroup containing ``elems``: (mask, generators)."""
    gens = [int(x) for x in elems]
    mask, _ = generate(g, gens)
    changed = True
    while changed:
        changed = False
        for t in group_generators(g):
            for h in list(gens):
                c = g.conj(t, h)
                if not (mask >> c) & 1:
                    gens.append(c)
                    mask, _ = generate(g, gens)
                    changed = True
    return mask, tuple(gens)


def conjugacy_classes(g: FiniteGroup) -> list[tuple[int, ...]]:
    c = g._cache.get("classes")
    if c is None:
        t, inv = g.table, g.inverses
        seen = np.zeros(g.order, dtype=bool)
        c = []
        for x in range(g.order):
            if seen[x]:
                continue
            cls = np.unique(t[t[:, x], inv])
            seen[cls] = True
            c.append(tuple(cls.tolist()))
        g._cache["classes"] = c
    return c


def _subgroup_from_mask(g: FiniteGroup, mask: int, gens: Sequence[int]) -> Subgroup:
    return Subgroup(members_of(mask), _is_normal_mask(g, mask, gens), g.order, tuple(gens))


def subgroups(g: FiniteGroup, *, cap: int | None = None) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, member bitset).

    Cyclic extension: start from the cyclic subgroups and keep joining each new
    subgroup with every cyclic subgroup it does not contain.
    """
    cap = caps.subgroup_cap if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds subgroup enumeration cap {cap}")
    cached = g._cache.get("subgroups")
    if cached is not None:
        return cached
    cyclic: dict[int, int] = {}
    for x in range(g.order):
        m, _ = generate(g, [x])
        cyclic.setdefault(m, x)
    found: dict[int, tuple[int, ...]] = {1 << g.identity: ()}
    for m, x in cyclic.items():
        found.setdefault(m, (x,) if m != 1 << g.identity else ())
    frontier = [m for m in found]
    cyc = list(cyclic.items())
    while frontier:
        nxt = []
        for m in frontier:
            gens = found[m]
            for cm, x in cyc:
                if cm & ~m == 0:
                    continue
                km, _ = generate(g, gens + (x,))
                if km not in found:
                    found[km] = gens + (x,)
                    nxt.append(km)
        frontier = nxt
    out = sorted((_subgroup_from_mask(g, m, gs) for m, gs in found.items()),
                 key=Subgroup.sort_key)
    g._cache["subgroups"] = out
    return out


def normal_subgroups(g: FiniteGroup, max_order: int | None = None) -> list[Subgroup]:
    """Every normal subgroup (of order at most ``max_order``), sorted by (order,
    member bitset). No size cap: normal subgroups are joins of normal closures
    of conjugacy classes, and every intermediate join of a bounded one is
    bounded too, so pruning by order loses nothing."""
    full = max_order is None or max_order >= g.order
    cached = g._cache.get("normal_subgroups")
    if cached is not None:
        return cached if full else [n for n in cached if n.order <= max_order]
    limit = g.order if full else max_order
    atoms: dict[int, tuple[int, ...]] = {}
    for cls in conjugacy_classes(g):
        m, gens = normal_closure(g, [cls[0]])
        if m.bit_count() <= limit:
            atoms.setdefault(m, gens)
    found: dict[int, tuple[int, ...]] = {1 << g.identity: ()}
    frontier = [1 << g.identity]
    atom_items = list(atoms.items())
    while frontier:
        nxt = []
        for m in frontier:
            for am, agens in atom_items:
                if am & ~m == 0:
                    continue
                gens = found[m] + agens
                km, _ = generate(g, gens)
                if km not in found and km.bit_count() <= limit:
                    found[km] = _small_gens(g, members_of(km))
                    nxt.append(km)
        frontier = nxt
    out = sorted((Subgroup(members_of(m), True, g.order, gs) for m, gs in found.items()),
                 key=Subgroup.sort_key)
    if full:
        g._cache["normal_subgroups"] = out
    return out


def minimal_normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Minimal nontrivial normal subgroups, sorted by (order, member bitset)."""
    cached = g._cache.get("minimal_normal")
    if cached is not None:
        return cached
    closures: dict[int, tuple[int, ...]] = {}
    for cls in conjugacy_classes(g):
        if cls[0] == g.identity:
            continue
        m, gens = normal_closure(g, [cls[0]])
        closures.setdefault(m, gens)
    minimal = [m for m in closures
               if not any(o != m and o & ~m == 0 for o in closures)]
    out = sorted((Subgroup(members_of(m), True, g.order, closures[m]) for m in minimal),
                 key=Subgroup.sort_key)
    g._cache["minimal_normal"] = out
    return out


def monolith(g: FiniteGroup) -> Subgroup | None:
    """The unique minimal nontrivial normal subgroup, if there is exactly one."""
    mins = minimal_normal_subgroups(g)
    return mins[0] if len(mins) == 1 else None


def is_simple(g: FiniteGroup) -> bool:
    if g.order == 1:
        return False
    mins = minimal_normal_subgroups(g)
    return len(mins) == 1 and mins[0].order == g.order


def is_abelian(g: FiniteGroup) -> bool:
    return g.is_commutative()


def center(g: FiniteGroup) -> Subgroup:
    t = g.table
    elems = [x for x in range(g.order) if np.array_equal(t[x], t[:, x])]
    return make_subgroup(g, elems)


def subgroup_group(g: FiniteGroup, h: Subgroup | Iterable[int],
                   label: str | None = None) -> tuple[FiniteGroup, Morphism]:
    """A subgroup as a group in its own right (ascending relabel) plus inclusion."""
    members = h.members if isinstance(h, Subgroup) else h
    sub, inc = subsemigroup(g, members, label)
    assert isinstance(sub, FiniteGroup)
    return sub, inc


def quotient(g: FiniteGroup, n: Subgroup | Iterable[int]) -> tuple[FiniteGroup, Morphism]:
    """G/N with cosets numbered by least member, and the projection."""
    members = n.members if isinstance(n, Subgroup) else tuple(sorted(set(n)))
    mask = mask_of(members)
    gens = _small_gens(g, members)
    if generate(g, gens)[0] != mask:
        raise NotNormal("not a subgroup")
    if not _is_normal_mask(g, mask, gens):
        raise NotNormal("subgroup is not normal")
    t = g.table
    coset = np.full(g.order, -1, dtype=np.int64)
    reps = []
    mem = np.array(members)
    for x in range(g.order):
        if coset[x] < 0:
            coset[t[x, mem]] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    qt = coset[t[np.ix_(reps, reps)]]
    names = None
    if g.names is not None:
        names = [g.names[r] + ("N" if len(members) > 1 else "") for r in reps]
    label = f"{g.label}/N" if g.label else None
    q = FiniteGroup(qt, names, label, check=False)
    return q, Morphism(g, q, coset, kind="surjection")


# --- products ---------------------------------------------------------------

def extend_action(n: FiniteGroup, k: FiniteGroup, gen_images: dict[int, Sequence[int]]) -> np.ndarray:
    """Action array (|K|, |N|) from the automorphisms assigned to generators of K."""
    act = {k.identity: np.arange(n.order)}
    gens = {int(x): np.asarray(v, dtype=np.int64) for x, v in gen_images.items()}
    queue = [k.identity]
    r = k.rows
    for x in queue:
        for s, phi in gens.items():
            y = r[x][s]
            img = act[x][phi]          # phi_{x s} = phi_x o phi_s
            if y in act:
                if not np.array_equal(act[y], img):
                    raise NotAnAction("generator images do not define a homomorphism")
            else:
                act[y] = img
                queue.append(y)
    if len(act) != k.order:
        raise NotAnAction("generators do not generate K")
    return np.stack([act[x] for x in range(k.order)])


def _check_action(n: FiniteGroup, k: FiniteGroup, action: np.ndarray) -> None:
    if action.shape != (k.order, n.order):
        raise NotAnAction(f"action must have shape ({k.order}, {n.order})")
    nt = n.table
    for x in range(k.order):
        phi = action[x]
        if len(np.unique(phi)) != n.order or not np.array_equal(phi[nt], nt[np.ix_(phi, phi)]):
            raise NotAnAction(f"image of {x} is not an automorphism")
    if not np.array_equal(action[k.identity], np.arange(n.order)):
        raise NotAnAction("identity must act trivially")
    kt = k.table
    # phi_{xy}(b) = phi_x(phi_y(b))
    composed = np.take_along_axis(action[:, None, :].repeat(k.order, 1),
                                  action[None, :, :].repeat(k.order, 0), axis=2)
    if not np.array_equal(action[kt], composed):
        raise NotAnAction("action is not a homomorphism into Aut(N)")


def semidirect_product(n: FiniteGroup, k: FiniteGroup, action, *,
                       cap: int | None = None, label: str | None = None) -> FiniteGroup:
    """N x| K with (a, x)(b, y) = (a phi_x(b), x y); (a, x) is element a*|K| + x.

    ``action[x]`` is the automorphism of N by which x acts, as an image array.
    """
    cap = caps.carrier_cap if cap is None else cap
    action = np.asarray(action, dtype=np.int64)
    _check_action(n, k, action)
    if n.order * k.order > cap:
        raise CapExceeded(f"order {n.order * k.order} exceeds carrier cap {cap}")
    a = np.arange(n.order)[:, None, None, None]
    x = np.arange(k.order)[None, :, None, None]
    b = np.arange(n.order)[None, None, :, None]
    y = np.arange(k.order)[None, None, None, :]
    first = n.table[a, action[x, b]]
    second = k.table[x, y]
    table = (first * k.order + second).reshape(n.order * k.order, n.order * k.order)
    names = None
    if n.names is not None or k.names is not None:
        names = [f"({n.name(i)},{k.name(j)})" for i in range(n.order) for j in range(k.order)]
    return FiniteGroup(table, names, label, check=False)


def wreath_product(n: FiniteGroup, q: FiniteGroup, *, cap: int | None = None) -> FiniteGroup:
    """Regular wreath product N^|Q| x| Q; Q permutes coordinates by
    (x.f)(y) = f(x^-1 y). Base coordinates use the iterated direct-product encoding."""
    cap = caps.carrier_cap if cap is None else cap
    m = q.order
    size = n.order ** m
    if size * m > cap:
        raise CapExceeded(f"order {size * m} exceeds carrier cap {cap}")
    base = n
    for _ in range(m - 1):
        base = direct_product(base, n, cap=cap)
    # coordinates of each base element, most significant first
    coords = np.array(np.unravel_index(np.arange(size), (n.order,) * m)).T
    radix = n.order ** np.arange(m - 1, -1, -1)
    qt = q.table
    action = np.empty((m, size), dtype=np.int64)
    for x in range(m):
        src = qt[q.inv(x)]            # coordinate y takes old coordinate x^-1 y
        action[x] = coords[:, src] @ radix
    label = f"{n.label}wr{q.label}" if n.label and q.label else None
    return semidirect_product(base, q, action, cap=cap, label=label)


# --- homomorphisms ----------------------------------------------------------

def extend_hom(h: FiniteGroup, g: FiniteGroup, gens: Sequence[int],
               images: Sequence[int]) -> np.ndarray | None:
    """The homomorphism h -> g sending gens[i] to images[i], or None when the
    assignment does not extend (gens must generate h)."""
    f = np.full(h.order, -1, dtype=np.int64)
    f[h.identity] = g.identity
    hr, gr = h.rows, g.rows
    queue = [h.identity]
    for x in queue:
        fx = int(f[x])
        for s, t in zip(gens, images):
            y = hr[x][s]
            v = gr[fx][t]
            if f[y] < 0:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    if np.any(f < 0):
        return None
    # consistency along generator edges implies a homomorphism; check anyway
    if not np.array_equal(f[h.table], g.table[np.ix_(f, f)]):
        return None
    return f


def find_embedding(h: FiniteGroup, g: FiniteGroup) -> Morphism | None:
    """An injective homomorphism h -> g (first in ascending candidate order)."""
    if g.order % h.order:
        return None
    gens = group_generators(h)
    ho, go = h.element_orders(), g.element_orders()
    cands = [[y for y in range(g.order) if go[y] == ho[s]] for s in gens]
    for choice in itertools.product(*cands):
        f = extend_hom(h, g, gens, choice)
        if f is not None and len(np.unique(f)) == h.order:
            return Morphism(h, g, f, kind="embedding")
    return None


# --- subquotients -------------------------------------------------------------

def subquotient_group(g: FiniteGroup, k: Subgroup | Iterable[int],
                      kernel: Iterable[int]) -> FiniteGroup:
    """K/N for K <= g and N (ambient indices) normal in K."""
    kg, inc = subgroup_group(g, k)
    pos = {int(v): i for i, v in enumerate(inc.images)}
    try:
        q, _ = quotient(kg, [pos[int(x)] for x in kernel])
    except KeyError:
        raise NotNormal("kernel is not inside the subgroup") from None
    return q


@dataclass(frozen=True)
class SubquotientWitness:
    """``target`` is isomorphic (via ``iso``) to subgroup / kernel inside ``ambient``."""

    ambient: FiniteGroup
    subgroup: Subgroup
    kernel: tuple[int, ...]       # ambient indices, normal in the subgroup
    iso: Morphism                 # quotient group -> target

    @property
    def target(self) -> FiniteGroup:
        return self.iso.codomain

    def quotient_group(self) -> FiniteGroup:
        return subquotient_group(self.ambient, self.subgroup, self.kernel)

    def verify(self) -> bool:
        mask = mask_of(self.subgroup.members)
        if generate(self.ambient, self.subgroup.members)[0] != mask:
            return False
        if mask_of(self.kernel) & ~mask:
            return False
        try:
            Morphism(self.quotient_group(), self.target, self.iso.images, kind="isomorphism")
        except ForgeError:
            return False
        return True

    def to_dict(self) -> dict:
        return {"subgroup": list(self.subgroup.members), "kernel": list(self.kernel),
                "iso": self.iso.images.tolist()}


def _quotients_matching(g: FiniteGroup, k: Subgroup, h: FiniteGroup) -> SubquotientWitness | None:
    kg, inc = subgroup_group(g, k)
    need = k.order // h.order
    if need == 1:
        iso = isomorphic(kg, h)
        if iso is None:
            return None
        q, _ = quotient(kg, [kg.identity])
        return SubquotientWitness(g, k, (g.identity,),
                                  Morphism(q, h, iso.images, kind="isomorphism"))
    if kg.is_commutative() and not h.is_commutative():
        return None
    for n in normal_subgroups(kg, max_order=need):
        if n.order != need:
            continue
        q, _ = quotient(kg, n)
        iso = isomorphic(q, h)
        if iso is not None:
            kernel = tuple(int(inc.images[x]) for x in n.members)
            return SubquotientWitness(g, k, tuple(sorted(kernel)), iso)
    return None


def is_subquotient(h: FiniteGroup, g: FiniteGroup, *, cap: int | None = None) -> SubquotientWitness | None:
    """Find K <= g and N normal in K with K/N isomorphic to h.

    Subgroups are tried by decreasing order (g itself first, which needs no
    subgroup enumeration), one per conjugacy class; kernels by increasing
    bitset. Only K whose order is a multiple of |h| are considered.
    """
    cap = caps.subgroup_cap if cap is None else cap
    if g.order % h.order:
        return None
    w = _quotients_matching(g, whole(g), h)
    if w is not None or h.order == g.order:
        return w
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds subgroup enumeration cap {cap}")
    hexp = np.lcm.reduce(h.element_orders())
    t, inv = g.table, g.inverses
    seen: set[int] = set()
    for k in sorted(subgroups(g, cap=cap), key=lambda s: (-s.order, s.mask)):
        if k.order == g.order or k.order % h.order:
            continue
        if k.mask in seen:
            continue
        mem = np.array(k.members)
        for x in range(g.order):
            seen.add(mask_of(t[t[x, mem], inv[x]].tolist()))
        if np.lcm.reduce(g.element_orders()[mem]) % hexp:
            continue
        w = _quotients_matching(g, k, h)
        if w is not None:
            return w
    return None


# --- decomposition ----------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    factors: list[FiniteGroup]
    witnesses: list[FactorWitness]

    def __len__(self) -> int:
        return len(self.factors)


def _split(g: FiniteGroup) -> tuple[Subgroup, Subgroup] | None:
    normals = [n for n in normal_subgroups(g) if 1 < n.order < g.order]
    by_order: dict[int, list[Subgroup]] = {}
    for n in normals:
        by_order.setdefault(n.order, []).append(n)
    e = 1 << g.identity
    for n1 in normals:
        for n2 in by_order.get(g.order // n1.order, []):
            if n1.mask & n2.mask == e:
                return n1, n2
    return None


def internal_product_witness(g: FiniteGroup, n1: Subgroup, n2: Subgroup) -> FactorWitness:
    f1, i1 = subgroup_group(g, n1)
    f2, i2 = subgroup_group(g, n2)
    r = g.rows
    images = [r[int(a)][int(b)] for a in i1.images for b in i2.images]
    iso = Morphism(direct_product(f1, f2), g, images, kind="isomorphism")
    return FactorWitness(f1, f2, iso)


def direct_decomposition(g: FiniteGroup) -> Decomposition:
    """Factor g into directly indecomposable groups.

    Splits on the first pair (N1, N2) of normal subgroups, in (order, bitset)
    order, with trivial intersection and |N1||N2| = |G|, then recurses.
    """
    if g.order == 1:
        return Decomposition([g], [])
    split = _split(g)
    if split is None:
        return Decomposition([g], [])
    w = internal_product_witness(g, *split)
    left = direct_decomposition(w.left_factor)
    right = direct_decomposition(w.right_factor)
    return Decomposition(left.factors + right.factors,
                         [w] + left.witnesses + right.witnesses)


def semidirect_complement(g: FiniteGroup, m: Subgroup) -> Subgroup | None:
    """A subgroup K with K and M meeting trivially and MK = G (first in order)."""
    if m.order == g.order:
        return trivial(g)
    need = g.order // m.order
    e = 1 << g.identity
    for k in subgroups(g):
        if k.order == need and k.mask & m.mask == e:
            return k
    return None
