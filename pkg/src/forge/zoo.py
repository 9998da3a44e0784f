"""Named groups and semigroups, plus the explicit constructions used by the
reproduction checks.

Name grammar (``resolve``)::

    Z<n>  D<n> (order 2n)  S<n>  A<n>  Dic<n> (order 4n)  Heis<p>  Q8  Q16  V4
    A:16                 Z4 x| Z4 with the generator of the right factor inverting
    Z<n>:Z<m>[:<u>]      Z_n x| Z_m, generator acting as multiplication by u
                         (default: least unit of exact order m mod n, else
                         least u != 1 with u^m = 1)
    P5:<p>               (Heis p x Heis p) / <(c, c^-1)>, order p^5
    PQQ:<p>,<q0>,<q1>    (Z_q0 x Z_q1) x| Z_p, faithful action on both factors
    Null<k> LZ<n> RZ<n> W<k> T      semigroups: null, left/right zero,
                                    the square-class witness, trivial
    <a>x<b>x...          direct products of any of the above
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .constructors import (alternating_group, cyclic_group, dicyclic_group,
                           dihedral_group, heisenberg_group, is_prime, left_zero,
                           null_semigroup, quaternion_group, right_zero,
                           square_class_semigroup, symmetric_group, trivial_semigroup)
from .errors import UnknownName
from .groups import (SubquotientWitness, extend_action, extend_hom, generate, make_subgroup,
                     quotient, semidirect_product, subquotient_group)
from .iso import isomorphic
from .kernel import FiniteGroup, FiniteSemigroup, Morphism, direct_product

__all__ = [
    "resolve", "ZOO", "zoo_groups", "metacyclic", "p5_group", "a16_group",
    "a16_embeddings", "A16Embedding", "zp2_subquotient", "two_prime_semidirect",
    "unit_of_order",
]

# The named zoo; every entry resolves to a group. Sorted by order.
ZOO: tuple[str, ...] = (
    "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2",
    "D4", "Q8", "Z9", "Z3xZ3", "Z10", "D5", "Z11", "Z12", "Z2xZ6", "D6", "Dic3",
    "A4", "Z13", "D7", "Z14", "Z15", "Z16", "Z4xZ4", "Z2xZ8", "D8", "Q16", "A:16",
    "D4xZ2", "Q8xZ2", "Z2xZ2xZ2xZ2", "D9", "Z18", "Z5:Z4", "D10", "Dic5", "Z7:Z3",
    "D11", "S4", "SL2", "A4xZ2", "D4xZ3", "Q8xZ3", "D12", "Z3:Z8", "Z25", "Z27", "Heis3",
    "Z9:Z3", "Z3xZ9", "D15", "PQQ:2,3,5", "P5:2", "D16", "Z32", "S3xS3",
    "A4xZ4", "A5", "D4xD4", "Q8xQ8",
)

_TOKEN = re.compile(
    r"^(?:(?P<cyc>Z)(?P<n>\d+)"
    r"|D(?P<dn>\d+)|S(?P<sn>\d+)|A(?P<an>\d+)|Dic(?P<dic>\d+)|Heis(?P<heis>\d+)"
    r"|Null(?P<null>\d+)|LZ(?P<lz>\d+)|RZ(?P<rz>\d+)|W(?P<w>\d+))$")
_META = re.compile(r"^Z(\d+):Z(\d+)(?::(\d+))?$")
_P5 = re.compile(r"^P5:(\d+)$")
_PQQ = re.compile(r"^PQQ:(\d+),(\d+),(\d+)$")


def _mult_order(u: int, n: int) -> int:
    k, x = 1, u % n
    while x != 1:
        x = (x * u) % n
        k += 1
    return k


def unit_of_order(n: int, m: int) -> int | None:
    """Least unit mod n of exact multiplicative order m; failing that, the least
    unit u != 1 with u^m = 1 (a non-faithful action); None if neither exists."""
    units = [u for u in range(2, n) if math.gcd(u, n) == 1]
    exact = [u for u in units if _mult_order(u, n) == m]
    if exact:
        return exact[0]
    loose = [u for u in units if pow(u, m, n) == 1]
    return loose[0] if loose else None


def _mult_action(n: int, u: int) -> list[int]:
    return [(u * x) % n for x in range(n)]


def metacyclic(n: int, m: int, u: int | None = None) -> FiniteGroup:
    """Z_n x| Z_m, the generator of Z_m acting as x -> u x. Element (a, x) is a*m + x."""
    if u is None:
        u = unit_of_order(n, m)
        if u is None:
            raise UnknownName(f"Z{n}:Z{m}: no nontrivial unit of order dividing {m} mod {n}")
    if math.gcd(u, n) != 1 or pow(u, m, n) != 1:
        raise UnknownName(f"Z{n}:Z{m}:{u}: {u} is not a unit with {u}^{m} = 1 mod {n}")
    zn, zm = cyclic_group(n), cyclic_group(m)
    act = extend_action(zn, zm, {1: _mult_action(n, u)})
    return semidirect_product(zn, zm, act, label=f"Z{n}:Z{m}")


def a16_group() -> FiniteGroup:
    """<x, y | x^4, y^4, y x y^-1 = x^-1> as Z4 x| Z4; x = (1, 0) = 4, y = (0, 1) = 1."""
    g = metacyclic(4, 4, 3)
    g.label = "A:16"
    return g


def p5_group(p: int) -> tuple[FiniteGroup, Morphism, FiniteGroup]:
    """G = (H x H) / <(c, c^-1)> for H the Heisenberg group mod p.

    Returns (G, projection H x H -> G, H).
    """
    if not is_prime(p):
        raise UnknownName(f"P5:{p}: {p} is not prime")
    h = heisenberg_group(p)
    hh = direct_product(h, h)
    c = 1                                    # a^0 b^0 c^1
    c_inv = p - 1
    _, kernel = generate(hh, [c * h.order + c_inv])
    g, proj = quotient(hh, kernel)
    g.label = f"P5:{p}"
    return g, proj, h


def two_prime_semidirect(p: int, q0: int, q1: int) -> FiniteGroup:
    """(Z_q0 x Z_q1) x| Z_p with the generator multiplying each coordinate by the
    least unit of exact order p (equal actions when q0 = q1)."""
    for q in (p, q0, q1):
        if not is_prime(q):
            raise UnknownName(f"PQQ:{p},{q0},{q1}: {q} is not prime")
    if (q0 - 1) % p or (q1 - 1) % p:
        raise UnknownName(f"PQQ:{p},{q0},{q1}: need q0 = q1 = 1 mod p")
    u0, u1 = unit_of_order(q0, p), unit_of_order(q1, p)
    n = direct_product(cyclic_group(q0), cyclic_group(q1))
    perm = [((u0 * (x // q1)) % q0) * q1 + (u1 * (x % q1)) % q1 for x in range(n.order)]
    act = extend_action(n, cyclic_group(p), {1: perm})
    return semidirect_product(n, cyclic_group(p), act, label=f"PQQ:{p},{q0},{q1}")


@dataclass(frozen=True)
class A16Embedding:
    """A realised inside an ambient product: the embedding, and the surjection
    onto the first factor obtained by composing with the first projection."""

    ambient: FiniteGroup
    embedding: Morphism           # A -> ambient
    surjection: Morphism          # A -> first factor


def a16_embeddings() -> dict[str, A16Embedding]:
    """A inside Q8 x Q8 via x = (i, 1), y = (j, j), and inside D4 x D4 via
    x = (p, 1), y = (q, p)."""
    a = a16_group()
    out = {}
    q8, d4 = quaternion_group(), dihedral_group(4)
    for name, grp, x, y in (("Q8", q8, (q8.index("i"), 0), (q8.index("j"), q8.index("j"))),
                            ("D4", d4, (d4.index("p"), 0), (d4.index("q"), d4.index("p")))):
        amb = direct_product(grp, grp)
        xi, yi = x[0] * grp.order + x[1], y[0] * grp.order + y[1]
        f = extend_hom(a, amb, [4, 1], [xi, yi])
        if f is None:
            raise AssertionError(f"generators in {name}x{name} do not satisfy the relations")
        emb = Morphism(a, amb, f, kind="embedding")
        surj = Morphism(a, grp, f // grp.order, kind="surjection")
        out[name] = A16Embedding(amb, emb, surj)
    return out


def zp2_subquotient(p: int) -> SubquotientWitness:
    """Z_{p^2} x| Z_p (action by 1 + p) as a subquotient of Z_{p^2} x H.

    Subgroup: pairs (u, a^i b^j c^k) with u = i mod p. Kernel: <(p, c^-1)>,
    identifying (0, c) with (p, I). Element (u, h) of the ambient is u*|H| + h.
    """
    if not is_prime(p) or p == 2:
        raise UnknownName(f"p must be an odd prime, got {p}")
    h = heisenberg_group(p)
    z = cyclic_group(p * p)
    amb = direct_product(z, h)
    amb.label = f"Z{p * p}xHeis{p}"
    members = [u * h.order + x for u in range(p * p) for x in range(h.order)
               if u % p == x // (p * p)]
    k = make_subgroup(amb, members)
    _, kern = generate(amb, [p * h.order + (p - 1)])
    target = metacyclic(p * p, p, 1 + p)
    iso = isomorphic(subquotient_group(amb, k, kern), target)
    if iso is None:
        raise AssertionError("subquotient is not isomorphic to the metacyclic group")
    return SubquotientWitness(amb, k, tuple(sorted(kern)), iso)


def _atom(tok: str) -> FiniteSemigroup:
    fixed = {"Q8": quaternion_group, "Q16": lambda: dicyclic_group(4),
             "V4": lambda: _product([cyclic_group(2), cyclic_group(2)], "V4"),
             "A:16": a16_group, "SL2": _sl2_3, "T": trivial_semigroup}
    if tok in fixed:
        g = fixed[tok]()
        g.label = tok
        return g
    if m := _META.match(tok):
        n, mm, u = int(m[1]), int(m[2]), m[3]
        return metacyclic(n, mm, None if u is None else int(u))
    if m := _P5.match(tok):
        return p5_group(int(m[1]))[0]
    if m := _PQQ.match(tok):
        return two_prime_semidirect(int(m[1]), int(m[2]), int(m[3]))
    m = _TOKEN.match(tok)
    if not m:
        raise UnknownName(f"unknown name {tok!r}")
    try:
        if m["cyc"]:
            return cyclic_group(int(m["n"]))
        if m["dn"]:
            return dihedral_group(int(m["dn"]))
        if m["sn"]:
            return symmetric_group(int(m["sn"]))
        if m["an"]:
            return alternating_group(int(m["an"]))
        if m["dic"]:
            return dicyclic_group(int(m["dic"]))
        if m["heis"]:
            return heisenberg_group(int(m["heis"]))
        if m["null"]:
            return null_semigroup(int(m["null"]))
        if m["lz"]:
            return left_zero(int(m["lz"]))
        if m["rz"]:
            return right_zero(int(m["rz"]))
        if m["w"]:
            return square_class_semigroup(int(m["w"]))
    except ValueError as exc:
        raise UnknownName(f"{tok}: {exc}") from None
    raise UnknownName(f"unknown name {tok!r}")


def _sl2_3() -> FiniteGroup:
    """SL(2, 3), order 24."""
    from .constructors import group_from_elements
    mats = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        mats.append((a, b, c, d))

    def op(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return group_from_elements(mats, op, label="SL2")


def _product(parts: list[FiniteSemigroup], label: str) -> FiniteSemigroup:
    out = parts[0]
    for q in parts[1:]:
        out = direct_product(out, q)
    out.label = label
    return out


def resolve(name: str) -> FiniteSemigroup:
    """Build the named group or semigroup (see module docstring)."""
    name = name.strip()
    parts = [tok for tok in name.split("x")]
    if any(not tok for tok in parts):
        raise UnknownName(f"unknown name {name!r}")
    atoms = [_atom(tok) for tok in parts]
    if len(atoms) == 1:
        return atoms[0]
    return _product(atoms, name)


def zoo_groups(max_order: int | None = None) -> list[tuple[str, FiniteGroup]]:
    """(name, group) for every zoo entry, optionally up to an order bound."""
    out = []
    for name in ZOO:
        g = resolve(name)
        if max_order is None or g.order <= max_order:
            assert isinstance(g, FiniteGroup)
            out.append((name, g))
    return out
