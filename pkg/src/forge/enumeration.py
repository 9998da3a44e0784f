"""Orderly generation of all semigroups of small order, one canonical table per
isomorphism class (optionally per isomorphism-or-anti-isomorphism class).

A table is canonical when it is the lexicographically least (in the chosen cell
order) among all its relabellings, and in ``anti`` mode also among the
relabellings of its transpose. Tables are filled cell by cell; a partial table
is abandoned as soon as a completed triple breaks associativity or some
relabelling is already provably smaller on the decided prefix. Canonical tables
are never abandoned, so each class is emitted exactly once and no
post-hoc deduplication is needed.

Catalogs persist as a directory holding ``manifest.json`` and one shard per
order, ``order_<n>.bin``: a little-endian uint32 record count followed by that
many records, each a uint16 byte length and then the row-major table bytes.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numba
import numpy as np

from .config import caps
from .constructors import opposite
from .errors import CapExceeded, CorruptShard, NonAssociative
from .kernel import FiniteSemigroup, first_associativity_violation

__all__ = ["CatalogHandle", "enumerate_semigroups", "save_catalog", "load_catalog",
           "default_catalog", "catalog_candidates", "canonical_form",
           "MODES", "FORMAT_VERSION"]

MODES = ("iso", "anti")
FORMAT_VERSION = 1
# upper bounds for buffer sizing; true counts up to iso for n = 1..7
_KNOWN_MAX = {1: 1, 2: 5, 3: 24, 4: 188, 5: 1915, 6: 28634, 7: 1627672}


@numba.njit(cache=False)
def _assoc_ok(T, n):
    for a in range(n):
        for b in range(n):
            ab = T[a, b]
            if ab < 0:
                continue
            for c in range(n):
                bc = T[b, c]
                if bc < 0:
                    continue
                l = T[ab, c]
                if l < 0:
                    continue
                r = T[a, bc]
                if r >= 0 and l != r:
                    return False
    return True


@numba.njit(cache=False)
def _not_beaten(T, perms, invs, transposes, ci, cj, ncells):
    """False when some relabelling is strictly smaller on a decided prefix."""
    for k in range(perms.shape[0]):
        p = perms[k]
        q = invs[k]
        tr = transposes[k]
        for pos in range(ncells):
            i = ci[pos]
            j = cj[pos]
            if tr:
                sv = T[q[j], q[i]]
            else:
                sv = T[q[i], q[j]]
            tv = T[i, j]
            if sv < 0 or tv < 0:
                break
            img = p[sv]
            if img < tv:
                return False
            if img > tv:
                break
    return True


@numba.njit(cache=False)
def _generate(n, perms, invs, transposes, ci, cj, idempotent, out):
    ncells = n * n
    T = -np.ones((n, n), dtype=np.int64)
    count = 0
    pos = 0
    overflow = False
    while pos >= 0:
        if pos == ncells:
            if count >= out.shape[0]:
                overflow = True
                break
            for i in range(n):
                for j in range(n):
                    out[count, i, j] = T[i, j]
            count += 1
            pos -= 1
            continue
        i = ci[pos]
        j = cj[pos]
        v = T[i, j] + 1
        hi = n
        if idempotent and i == j:
            if v > i:
                v = n
            else:
                v = i
            hi = i + 1
        found = False
        while v < hi:
            T[i, j] = v
            if _assoc_ok(T, n) and _not_beaten(T, perms, invs, transposes, ci, cj, ncells):
                found = True
                break
            v += 1
        if found:
            pos += 1
        else:
            T[i, j] = -1
            pos -= 1
    return count, overflow


def _cells(n: int, cell_order: str) -> tuple[np.ndarray, np.ndarray]:
    if cell_order == "row":
        ci, cj = np.divmod(np.arange(n * n), n)
    elif cell_order == "col":
        cj, ci = np.divmod(np.arange(n * n), n)
    else:
        raise ValueError(f"unknown cell order {cell_order!r}")
    return ci.astype(np.int64), cj.astype(np.int64)


def _relabellings(n: int, mode: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    invs = np.argsort(perms, axis=1)
    tr = np.zeros(len(perms), dtype=np.bool_)
    if mode == "anti":
        perms = np.concatenate([perms, perms])
        invs = np.concatenate([invs, invs])
        tr = np.concatenate([tr, np.ones(len(tr), dtype=np.bool_)])
    elif mode != "iso":
        raise ValueError(f"mode must be one of {MODES}")
    # the identity relabelling never beats anything
    keep = ~((np.all(perms == np.arange(n), axis=1)) & ~tr)
    return perms[keep], invs[keep], tr[keep]


def generate_order(n: int, mode: str = "iso", idempotent_only: bool = False,
                   cell_order: str = "row") -> np.ndarray:
    """All canonical tables of order n, shape (count, n, n), in emission order."""
    perms, invs, tr = _relabellings(n, mode)
    ci, cj = _cells(n, cell_order)
    buf = np.empty((_KNOWN_MAX.get(n, 10 ** 7) + 1, n, n), dtype=np.int64)
    count, overflow = _generate(n, perms, invs, tr, ci, cj, idempotent_only, buf)
    if overflow:
        raise CapExceeded(f"more than {len(buf)} classes of order {n}")
    return buf[:count].astype(np.uint8)


def canonical_form(table: np.ndarray, mode: str = "iso", cell_order: str = "row") -> np.ndarray:
    """Least relabelling of a complete table (brute force over all n! labellings)."""
    t = np.asarray(table)
    n = t.shape[0]
    perms = np.array(list(itertools.permutations(range(n))))
    invs = np.argsort(perms, axis=1)
    sources = [t] + ([t.T] if mode == "anti" else [])
    best = None
    for src in sources:
        # relabelled[k][i, j] = p[src[q[i], q[j]]]
        rel = np.take_along_axis(perms[:, None, :],
                                 src[invs[:, :, None], invs[:, None, :]].reshape(len(perms), 1, -1),
                                 axis=2).reshape(len(perms), n, n)
        flat = rel.transpose(0, 2, 1).reshape(len(perms), -1) if cell_order == "col" \
            else rel.reshape(len(perms), -1)
        k = np.lexsort(flat.T[::-1])[0]
        cand = rel[k]
        cflat = flat[k]
        if best is None or tuple(cflat) < tuple(best[1]):
            best = (cand, cflat)
    return best[0]


@dataclass
class CatalogHandle:
    """Canonical semigroup tables of orders 1..max_order."""

    max_order: int
    mode: str
    idempotent_only: bool
    shards: dict[int, np.ndarray]
    versions: dict = field(default_factory=dict)
    _candidates: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def counts(self) -> dict[int, int]:
        return {n: len(a) for n, a in self.shards.items()}

    def semigroups(self, order: int) -> Iterator[FiniteSemigroup]:
        for k, t in enumerate(self.shards[order]):
            yield FiniteSemigroup(t.astype(np.int32), label=f"C{order}.{k}", check=False)

    def __iter__(self) -> Iterator[FiniteSemigroup]:
        for n in sorted(self.shards):
            yield from self.semigroups(n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CatalogHandle) and self.max_order == other.max_order
                and self.mode == other.mode and self.idempotent_only == other.idempotent_only
                and self.shards.keys() == other.shards.keys()
                and all(np.array_equal(self.shards[n], other.shards[n]) for n in self.shards))


def enumerate_semigroups(max_order: int, mode: str = "iso", idempotent_only: bool = False,
                         *, allow_order_7: bool = False, cell_order: str = "row") -> CatalogHandle:
    """Catalog of every semigroup of order <= max_order, one per class."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    limit = 7 if allow_order_7 else caps.enumeration_cap
    if max_order > limit or max_order < 1:
        raise CapExceeded(f"max_order {max_order} outside [1, {limit}]")
    shards = {n: generate_order(n, mode, idempotent_only, cell_order)
              for n in range(1, max_order + 1)}
    return CatalogHandle(max_order, mode, idempotent_only, shards,
                         {"format": FORMAT_VERSION, "cell_order": cell_order})


def _shard_bytes(tables: np.ndarray) -> bytes:
    parts = [struct.pack("<I", len(tables))]
    for t in tables:
        b = np.ascontiguousarray(t, dtype=np.uint8).tobytes()
        parts.append(struct.pack("<H", len(b)))
        parts.append(b)
    return b"".join(parts)


def save_catalog(handle: CatalogHandle, path: str | Path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    shards = {}
    for n, tables in sorted(handle.shards.items()):
        data = _shard_bytes(tables)
        name = f"order_{n}.bin"
        (path / name).write_bytes(data)
        shards[str(n)] = {"file": name, "count": len(tables),
                          "sha256": hashlib.sha256(data).hexdigest()}
    manifest = {"format": "forge-catalog", "version": FORMAT_VERSION,
                "max_order": handle.max_order, "mode": handle.mode,
                "idempotent_only": handle.idempotent_only,
                "counts": {str(n): len(t) for n, t in sorted(handle.shards.items())},
                "shards": shards, "versions": handle.versions}
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))


def _read_shard(data: bytes, n: int, expected: int) -> np.ndarray:
    if len(data) < 4:
        raise CorruptShard("shard shorter than its header")
    (count,) = struct.unpack_from("<I", data, 0)
    if count != expected:
        raise CorruptShard(f"order {n}: shard holds {count} records, manifest says {expected}")
    off = 4
    out = np.empty((count, n, n), dtype=np.uint8)
    for k in range(count):
        if off + 2 > len(data):
            raise CorruptShard(f"order {n}: truncated at record {k}")
        (length,) = struct.unpack_from("<H", data, off)
        off += 2
        if length != n * n or off + length > len(data):
            raise CorruptShard(f"order {n}: bad record {k}")
        out[k] = np.frombuffer(data, dtype=np.uint8, count=length, offset=off).reshape(n, n)
        off += length
    if off != len(data):
        raise CorruptShard(f"order {n}: {len(data) - off} trailing bytes")
    return out


def load_catalog(path: str | Path) -> CatalogHandle:
    """Load and check a saved catalog: counts against the manifest, and a
    deterministic 1% sample (every 100th table, at least one) revalidated."""
    path = Path(path)
    try:
        manifest = json.loads((path / "manifest.json").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptShard(f"unreadable manifest: {exc}") from None
    if manifest.get("format") != "forge-catalog":
        raise CorruptShard("not a forge catalog manifest")
    shards = {}
    for key, info in manifest["shards"].items():
        n = int(key)
        if manifest["counts"].get(key) != info["count"]:
            raise CorruptShard(f"order {n}: manifest counts disagree")
        tables = _read_shard((path / info["file"]).read_bytes(), n, info["count"])
        for k in range(0, len(tables), 100):
            t = tables[k]
            if t.max(initial=0) >= n or first_associativity_violation(t.astype(np.int64)) is not None:
                raise CorruptShard(f"order {n}: record {k} is not a semigroup table")
        shards[n] = tables
    return CatalogHandle(int(manifest["max_order"]), manifest["mode"],
                         bool(manifest["idempotent_only"]), shards,
                         manifest.get("versions", {}))


@functools.lru_cache(maxsize=None)
def _on_the_fly(order: int) -> tuple[FiniteSemigroup, ...]:
    tables = generate_order(order, "anti")
    return tuple(FiniteSemigroup(t.astype(np.int32), label=f"C{order}.{k}", check=False)
                 for k, t in enumerate(tables))


def catalog_candidates(order: int, catalog: CatalogHandle | None = None) -> list[FiniteSemigroup]:
    """Every semigroup of the given order up to isomorphism (representatives,
    each followed by its opposite when the catalog folds anti-isomorphism)."""
    if catalog is not None and order <= catalog.max_order and not catalog.idempotent_only:
        cached = catalog._candidates.get(order)
        if cached is None:
            cached = catalog._candidates[order] = _with_opposites(
                list(catalog.semigroups(order)), catalog.mode == "anti")
        return list(cached)
    return list(_on_the_fly_candidates(order))


def _with_opposites(reps: list[FiniteSemigroup], anti: bool) -> tuple[FiniteSemigroup, ...]:
    if not anti:
        return tuple(reps)
    out = []
    for q in reps:
        out.append(q)
        op = opposite(q)
        if op != q:
            out.append(op)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _on_the_fly_candidates(order: int) -> tuple[FiniteSemigroup, ...]:
    return _with_opposites(list(_on_the_fly(order)), True)


@functools.lru_cache(maxsize=None)
def _default_catalog(max_order: int, mode: str) -> CatalogHandle:
    env = os.environ.get("FORGE_CATALOG")
    if env and (Path(env) / "manifest.json").exists():
        cat = load_catalog(env)
        if cat.max_order >= max_order and cat.mode == mode and not cat.idempotent_only:
            return cat
    return enumerate_semigroups(max_order, mode)


def default_catalog(max_order: int = 4, mode: str = "anti") -> CatalogHandle:
    """The catalog at $FORGE_CATALOG when it reaches ``max_order``, else a fresh one."""
    return _default_catalog(max_order, mode)


def validate_catalog(handle: CatalogHandle) -> None:
    """Full revalidation (used by tests): every table associative."""
    for n, tables in handle.shards.items():
        for k, t in enumerate(tables):
            bad = first_associativity_violation(t.astype(np.int64))
            if bad is not None:
                raise NonAssociative(*bad)
