"""Standard semigroups and groups built as tables."""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

import numpy as np

from .kernel import FiniteGroup, FiniteSemigroup, _like

__all__ = [
    "null_semigroup", "square_class_semigroup", "trivial_semigroup", "left_zero", "right_zero",
    "cyclic_group", "dihedral_group", "symmetric_group", "alternating_group",
    "quaternion_group", "dicyclic_group", "heisenberg_group",
    "adjoin_identity", "opposite", "group_from_elements",
    "group_from_permutations", "is_prime",
]


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_range(name: str, value: int, lo: int, hi: int | None = None) -> None:
    if not isinstance(value, (int, np.integer)) or value < lo or (hi is not None and value > hi):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ValueError(f"{name} must be an integer in {bound}, got {value!r}")


def null_semigroup(kappa: int) -> FiniteSemigroup:
    """Null(kappa): kappa + 1 elements, every product equal to element 0 (``z``)."""
    _check_range("kappa", kappa, 0)
    names = ["z"] + [f"a{i}" for i in range(1, kappa + 1)]
    return FiniteSemigroup(np.zeros((kappa + 1, kappa + 1), dtype=np.int32), names,
                           label=f"Null({kappa})", check=False)


def square_class_semigroup(kappa: int) -> FiniteSemigroup:
    """2(kappa+1) elements x_0..x_kappa, y_0..y_{kappa-1}, z with x_i x_j = y_0
    and every other product z.

    Its action classes {x_i} and {y_i} + {z} both have kappa + 1 elements, the
    second containing two products, so Null(kappa) is not a direct factor; it
    becomes one after multiplying by any Null(n) with n > 0.
    """
    _check_range("kappa", kappa, 1)
    n = 2 * (kappa + 1)
    z = n - 1
    t = np.full((n, n), z, dtype=np.int32)
    t[: kappa + 1, : kappa + 1] = kappa + 1        # y_0
    names = [f"x{i}" for i in range(kappa + 1)] + [f"y{i}" for i in range(kappa)] + ["z"]
    return FiniteSemigroup(t, names, label=f"W({kappa})")


def trivial_semigroup() -> FiniteSemigroup:
    return null_semigroup(0)


def left_zero(n: int) -> FiniteSemigroup:
    """x * y = x"""
    _check_range("n", n, 1)
    return FiniteSemigroup(np.repeat(np.arange(n)[:, None], n, axis=1), label=f"LZ{n}", check=False)


def right_zero(n: int) -> FiniteSemigroup:
    """x * y = y"""
    _check_range("n", n, 1)
    return FiniteSemigroup(np.repeat(np.arange(n)[None, :], n, axis=0), label=f"RZ{n}", check=False)


def group_from_elements(elements: Sequence[Hashable], op: Callable,
                        names: Sequence[str] | None = None,
                        label: str | None = None) -> FiniteGroup:
    """Table of a concrete group; ``elements`` must be closed under ``op``."""
    index = {x: i for i, x in enumerate(elements)}
    table = np.array([[index[op(a, b)] for b in elements] for a in elements], dtype=np.int32)
    return FiniteGroup(table, names, label, check=True)


def _closure(gens: Sequence[tuple], op: Callable, identity: tuple) -> list[tuple]:
    seen = {identity}
    out = [identity]
    for x in out:
        for g in gens:
            y = op(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def _compose(p: tuple, q: tuple) -> tuple:
    # (p q)(x) = p(q(x))
    return tuple(p[i] for i in q)


def group_from_permutations(gens: Sequence[Sequence[int]], label: str | None = None) -> FiniteGroup:
    """The permutation group generated by ``gens``; elements sorted lexicographically."""
    gens = [tuple(g) for g in gens]
    degree = len(gens[0])
    elems = sorted(_closure(gens, _compose, tuple(range(degree))))
    return group_from_elements(elems, _compose, [_perm_name(p) for p in elems], label)


def _perm_name(p: tuple) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + "".join(map(str, c)) + ")" if len(p) < 10 else
                      "(" + " ".join(map(str, c)) + ")")
    return "".join(cycles) or "e"


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n, element k is the residue k."""
    _check_range("n", n, 1)
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, label=f"Z{n}", check=False)


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n, <p, q | p^n, q^2, q p q^-1 = p^-1>.

    Element ``p^i q^f`` has index ``f * n + i``.
    """
    _check_range("n", n, 1)
    elems = [(i, f) for f in range(2) for i in range(n)]

    def op(x, y):
        (i, a), (j, b) = x, y
        return ((i + (j if a == 0 else -j)) % n, (a + b) % 2)

    def nm(i, f):
        r = "" if i == 0 else ("p" if i == 1 else f"p^{i}")
        s = r + ("q" if f else "")
        return s or "e"

    return group_from_elements(elems, op, [nm(i, f) for i, f in elems], f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1}, permutations in lexicographic order; (st)(x) = s(t(x))."""
    _check_range("n", n, 1, 6)
    elems = list(itertools.permutations(range(n)))
    return group_from_elements(elems, _compose, [_perm_name(p) for p in elems], f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    _check_range("n", n, 1, 6)

    def even(p):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inversions % 2 == 0

    elems = [p for p in itertools.permutations(range(n)) if even(p)]
    return group_from_elements(elems, _compose, [_perm_name(p) for p in elems], f"A{n}")


def _qmul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def quaternion_group() -> FiniteGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k} in that index order."""
    units = []
    for axis in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return group_from_elements(units, _qmul, names, "Q8")


def dicyclic_group(n: int) -> FiniteGroup:
    """Dic_n of order 4n: <a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>.

    Element ``a^i x^f`` has index ``f * 2n + i``. Dic_2 is isomorphic to Q8 and
    Dic_(2^k) is the generalized quaternion group of order 2^(k+2).
    """
    _check_range("n", n, 1)
    m = 2 * n
    elems = [(i, f) for f in range(2) for i in range(m)]

    def op(x, y):
        (i, a), (j, b) = x, y
        j = j if a == 0 else -j
        k = i + j
        if a and b:
            k += n  # x^2 = a^n
        return (k % m, (a + b) % 2)

    def nm(i, f):
        r = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        return (r + ("x" if f else "")) or "e"

    return group_from_elements(elems, op, [nm(i, f) for i, f in elems], f"Dic{n}")


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z_p.

    With a = I + e23, b = I + e12, c = I + e13, element ``a^i b^j c^k`` has index
    ``(i * p + j) * p + k``.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")

    def mat(x, y, z):  # [[1, x, z], [0, 1, y], [0, 0, 1]]
        return np.array([[1, x, z], [0, 1, y], [0, 0, 1]], dtype=np.int64)

    a, b, c = mat(0, 1, 0), mat(1, 0, 0), mat(0, 0, 1)

    def mpow(m, k):
        r = np.eye(3, dtype=np.int64)
        for _ in range(k):
            r = (r @ m) % p
        return r

    def key(m):
        return (int(m[0, 1]), int(m[1, 2]), int(m[0, 2]))

    forms = [(i, j, k) for i in range(p) for j in range(p) for k in range(p)]
    mats = [(mpow(a, i) @ mpow(b, j) @ mpow(c, k)) % p for i, j, k in forms]
    index = {key(m): n for n, m in enumerate(mats)}
    if len(index) != p ** 3:
        raise AssertionError("normal forms are not distinct")
    table = np.array([[index[key((x @ y) % p)] for y in mats] for x in mats], dtype=np.int32)

    def nm(i, j, k):
        parts = [(s if e == 1 else f"{s}^{e}") for s, e in (("a", i), ("b", j), ("c", k)) if e]
        return "".join(parts) or "I"

    return FiniteGroup(table, [nm(*f) for f in forms], f"Heis{p}")


def adjoin_identity(s: FiniteSemigroup) -> FiniteSemigroup:
    """S with a new identity element appended at index |S| (always adjoined)."""
    n = s.order
    t = np.empty((n + 1, n + 1), dtype=np.int32)
    t[:n, :n] = s.table
    t[n, :] = np.arange(n + 1)
    t[:, n] = np.arange(n + 1)
    names = None if s.names is None else list(s.names) + ["1"]
    label = f"{s.label}^1" if s.label else None
    return FiniteSemigroup(t, names, label, check=False)


def opposite(s: FiniteSemigroup) -> FiniteSemigroup:
    """Same carrier, x *op y = y * x."""
    label = f"{s.label}^op" if s.label else None
    return _like(s, s.table.T.copy(), s.names, label)
