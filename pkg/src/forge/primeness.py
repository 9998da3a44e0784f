"""Primeness deciders for finite groups, the implication-chain audit, and a
bounded Tarski falsifier for finite semigroups.

Group verdicts:

* Tarski: prime iff directly indecomposable (Krull-Schmidt).
* Rhodes, semidirect products: prime iff simple.
* Modified Rhodes, direct products: prime iff monolithic.
* Rhodes, direct products: three stages. Not monolithic gives a counterexample
  G -> G/N x G/N'. A noncommutative monolith, a complemented monolith or a
  cyclic group of prime-power order is prime. Anything else is searched against
  pairs from a caller-supplied universe and may end up unknown.

Every verdict carries a JSON certificate (see ``certificates``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .certificates import table_json
from .config import caps
from .errors import CapExceeded, CatalogInsufficient, TrivialInput
from .groups import (Decomposition, direct_decomposition, is_simple, is_subquotient,
                     minimal_normal_subgroups, monolith, normal_subgroups, quotient,
                     semidirect_complement)
from .kernel import FiniteGroup, FiniteSemigroup, Morphism, direct_product
from .structure import (_cheap_invariants, action_classes, direct_factor, is_null,
                        null_factor, null_factor_refusal)

__all__ = [
    "PrimenessVerdict", "PRIME", "NOT_PRIME", "UNKNOWN",
    "tarski_prime_group", "rhodes_semidirect_prime_group", "rhodes_direct_prime_group",
    "modified_rhodes_direct_prime_group", "implication_audit", "AuditReport", "AuditRow",
    "tarski_falsify_semigroup", "decomposition_certificate",
]

PRIME, NOT_PRIME, UNKNOWN = "Prime", "NotPrime", "UnknownWithinBound"


@dataclass
class PrimenessVerdict:
    kind: str
    verdict: str
    certificate: dict
    bound: dict | None = None

    @property
    def decided(self) -> bool:
        return self.verdict != UNKNOWN

    @property
    def prime(self) -> bool:
        return self.verdict == PRIME

    def to_dict(self) -> dict:
        return {"kind": self.kind, "verdict": self.verdict,
                "certificate": self.certificate, "bound": self.bound}


def _nontrivial(g: FiniteSemigroup) -> None:
    if g.order < 2:
        raise TrivialInput("the trivial algebra is the unit of the product, never prime")


def decomposition_certificate(g: FiniteGroup, d: Decomposition) -> dict:
    """Factors plus one isomorphism from their left-nested product onto g."""
    # Each factor is a subgroup of a subgroup ...; push inclusions down to g.
    incl: dict[int, np.ndarray] = {id(g): np.arange(g.order)}
    for w in d.witnesses:
        base = incl[id(w.target)]
        m = w.right_factor.order
        left = w.iso.images[np.arange(w.left_factor.order) * m + w.right_factor.identity]
        right = w.iso.images[w.left_factor.identity * m + np.arange(m)]
        incl[id(w.left_factor)] = base[left]
        incl[id(w.right_factor)] = base[right]
    images = np.array([g.identity])
    r = g.table
    for f in d.factors:
        emb = incl[id(f)]
        images = r[images[:, None], emb[None, :]].ravel()
    return {"type": "factorization", "subject": table_json(g),
            "factors": [table_json(f) for f in d.factors], "iso": images.tolist()}


# --- group deciders -----------------------------------------------------------

def tarski_prime_group(g: FiniteGroup) -> PrimenessVerdict:
    _nontrivial(g)
    d = direct_decomposition(g)
    if len(d) == 1:
        return PrimenessVerdict("TarskiGroup", PRIME,
                                {"type": "indecomposable", "subject": table_json(g)})
    return PrimenessVerdict("TarskiGroup", NOT_PRIME, decomposition_certificate(g, d))


def rhodes_semidirect_prime_group(g: FiniteGroup) -> PrimenessVerdict:
    _nontrivial(g)
    if is_simple(g):
        return PrimenessVerdict("RhodesSemidirect", PRIME, {"type": "simple", "subject": table_json(g)})
    n = next(n for n in normal_subgroups(g) if 1 < n.order < g.order)
    return PrimenessVerdict("RhodesSemidirect", NOT_PRIME,
                            {"type": "proper_normal_subgroup", "subject": table_json(g),
                             "members": list(n.members)})


def _two_normals_certificate(g: FiniteGroup) -> dict:
    n1, n2 = minimal_normal_subgroups(g)[:2]
    q1, p1 = quotient(g, n1)
    q2, p2 = quotient(g, n2)
    emb = p1.images * q2.order + p2.images
    return {"type": "two_minimal_normals", "subject": table_json(g),
            "normals": [list(n1.members), list(n2.members)],
            "quotients": [table_json(q1), table_json(q2)],
            "projections": [p1.images.tolist(), p2.images.tolist()],
            "embedding": emb.tolist()}


def modified_rhodes_direct_prime_group(g: FiniteGroup) -> PrimenessVerdict:
    _nontrivial(g)
    m = monolith(g)
    if m is not None:
        return PrimenessVerdict("ModifiedRhodesDirect", PRIME,
                                {"type": "monolith", "subject": table_json(g),
                                 "members": list(m.members)})
    return PrimenessVerdict("ModifiedRhodesDirect", NOT_PRIME, _two_normals_certificate(g))


def _prime_power_cyclic(g: FiniteGroup) -> bool:
    n = g.order
    if int(g.element_orders().max()) != n:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def _exponent(g: FiniteGroup) -> int:
    return int(np.lcm.reduce(g.element_orders()))


def _named(universe: Iterable) -> list[tuple[str, FiniteGroup]]:
    out = []
    for k, u in enumerate(universe):
        if isinstance(u, tuple):
            out.append((str(u[0]), u[1]))
        else:
            out.append((u.label or f"U{k}", u))
    return out


def rhodes_direct_prime_group(g: FiniteGroup, universe: Sequence = ()) -> PrimenessVerdict:
    """Three-stage decision; ``universe`` holds groups or (name, group) pairs.

    Stage 3 tries unordered pairs (G0, G1) by increasing |G0 x G1|, skipping
    factors that already have g as a subquotient. Pairs whose product exceeds a
    cap are skipped and listed in the bound instead of aborting the search.
    """
    _nontrivial(g)
    kind = "RhodesDirect"
    mins = minimal_normal_subgroups(g)
    if len(mins) > 1:
        return PrimenessVerdict(kind, NOT_PRIME, _two_normals_certificate(g))
    m = mins[0]
    base = {"type": "rhodes_sufficient", "subject": table_json(g), "monolith": list(m.members)}
    mg = g.table[np.ix_(m.members, m.members)]
    if not np.array_equal(mg, mg.T):
        return PrimenessVerdict(kind, PRIME, {**base, "case": "i"})
    if g.order <= caps.subgroup_cap:
        k = semidirect_complement(g, m)
        if k is not None:
            return PrimenessVerdict(kind, PRIME, {**base, "case": "ii", "complement": list(k.members)})
    if _prime_power_cyclic(g):
        return PrimenessVerdict(kind, PRIME, {**base, "case": "iii"})
    return _rhodes_search(g, _named(universe))


def _rhodes_search(g: FiniteGroup, universe: list[tuple[str, FiniteGroup]]) -> PrimenessVerdict:
    kind = "RhodesDirect"
    exp = _exponent(g)
    nonabelian = not g.is_commutative()
    skipped: list[dict] = []
    # factors already dividing g cannot take part in a counterexample
    usable = []
    for name, u in universe:
        if u.order % g.order == 0:
            try:
                if is_subquotient(g, u) is not None:
                    continue
            except CapExceeded:
                skipped.append({"factor": name, "reason": "subgroup cap"})
                continue
        usable.append((name, u))
    pairs = sorted(itertools.combinations_with_replacement(range(len(usable)), 2),
                   key=lambda ij: (usable[ij[0]][1].order * usable[ij[1]][1].order, ij))
    checked = 0
    for i, j in pairs:
        (n0, g0), (n1, g1) = usable[i], usable[j]
        size = g0.order * g1.order
        if size % g.order or math.lcm(_exponent(g0), _exponent(g1)) % exp:
            checked += 1
            continue
        if nonabelian and g0.is_commutative() and g1.is_commutative():
            checked += 1
            continue
        if size > caps.carrier_cap:
            skipped.append({"pair": [n0, n1], "reason": f"order {size} over carrier cap"})
            continue
        try:
            w = is_subquotient(g, direct_product(g0, g1))
        except CapExceeded:
            skipped.append({"pair": [n0, n1], "reason": f"order {size} over subgroup cap"})
            continue
        checked += 1
        if w is not None:
            cert = {"type": "direct_product_subquotient", "subject": table_json(g),
                    "pair": [n0, n1], "factors": [table_json(g0), table_json(g1)],
                    "subgroup": list(w.subgroup.members), "kernel": list(w.kernel),
                    "iso": w.iso.images.tolist()}
            return PrimenessVerdict(kind, NOT_PRIME, cert)
    bound = {"universe": [n for n, _ in universe], "usable_factors": [n for n, _ in usable],
             "pairs_checked": checked, "skipped": skipped}
    return PrimenessVerdict(kind, UNKNOWN, {"type": "exhaustion", "bound": bound}, bound)


# --- implication audit --------------------------------------------------------

@dataclass
class AuditRow:
    name: str
    order: int
    rhodes_semidirect: str
    rhodes_direct: str
    monolithic: bool
    tarski: str

    def conditions(self) -> tuple[bool, bool, bool, bool]:
        """The four conditions, with an unknown Rhodes-direct verdict counted as prime."""
        return (self.rhodes_semidirect == PRIME, self.rhodes_direct != NOT_PRIME,
                self.monolithic, self.tarski == PRIME)


@dataclass
class AuditReport:
    rows: list[AuditRow] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    strictness: dict[int, list[str]] = field(default_factory=lambda: {1: [], 2: [], 3: []})

    def to_dict(self) -> dict:
        return {"rows": [r.__dict__ for r in self.rows], "violations": self.violations,
                "strictness": {str(k): v for k, v in self.strictness.items()}}


def implication_audit(universe: Sequence, rhodes_universe: Sequence = ()) -> AuditReport:
    """Check simple => Rhodes-direct-prime => monolithic => Tarski-prime on each
    group, and collect groups showing that an implication does not reverse.

    Strictness for the second implication needs a definite NotPrime from the
    bounded Rhodes-direct search, so it depends on ``rhodes_universe``.
    """
    report = AuditReport()
    runi = _named(rhodes_universe)
    for name, g in _named(universe):
        if g.order < 2:
            continue
        row = AuditRow(name, g.order,
                       rhodes_semidirect_prime_group(g).verdict,
                       rhodes_direct_prime_group(g, runi).verdict,
                       monolith(g) is not None,
                       tarski_prime_group(g).verdict)
        report.rows.append(row)
        c = row.conditions()
        for k in range(3):
            if c[k] and not c[k + 1]:
                report.violations.append({"group": name, "implication": k + 1})
        if row.rhodes_direct == PRIME and not c[0]:
            report.strictness[1].append(name)
        if row.monolithic and row.rhodes_direct == NOT_PRIME:
            report.strictness[2].append(name)
        if c[3] and not c[2]:
            report.strictness[3].append(name)
    return report


# --- semigroups -----------------------------------------------------------------

def _class_profile(s: FiniteSemigroup) -> list[tuple[int, int]]:
    ac = action_classes(s)
    return [(len(c), p) for c, p in zip(ac.classes, ac.per_class_product_count)]


def _null_divides(profile: Iterable[tuple[int, int]], kappa: int) -> bool:
    return all(size % (kappa + 1) == 0 and size // (kappa + 1) >= p for size, p in profile)


def _refusal(x: FiniteSemigroup, y: FiniteSemigroup, kappa: int | None) -> dict:
    if kappa is not None:
        r = null_factor_refusal(y, kappa)
        return {"type": "null_refusal", "subject": table_json(y), "kappa": kappa,
                "class": list(r.class_members)}
    return {"type": "direct_factor_search"}


def _counterexample(x, kappa, y0, y1, catalog) -> dict:
    y = direct_product(y0, y1)
    if kappa is not None:
        w = null_factor(y, kappa)           # S0 x Null(kappa) -> Y
        t = w.left_factor
        m = x.order
        # X x T index a*|T| + s  <-  (s, a) index s*m + a
        a, s = np.divmod(np.arange(x.order * t.order), t.order)
        images = w.iso.images[s * m + a]
    else:
        w = direct_factor(y, x, catalog)    # X x T -> Y
        t = w.right_factor
        images = w.iso.images
    return {"type": "tarski_counterexample", "x": table_json(x), "t": table_json(t),
            "y0": table_json(y0), "y1": table_json(y1), "iso": images.tolist(),
            "refusals": [_refusal(x, y0, kappa), _refusal(x, y1, kappa)]}


def tarski_falsify_semigroup(x: FiniteSemigroup, max_order: int,
                             catalog=None) -> PrimenessVerdict:
    """Look for Y0, Y1 with X a direct factor of Y0 x Y1 but of neither Y0 nor Y1.

    Pairs are visited by increasing |Y0||Y1|, then by decreasing |Y0|, then in
    catalog order (each iso-class followed by its opposite). Every order up to
    max_order // 2 must be reachable by the catalog or on-the-fly enumeration;
    otherwise CatalogInsufficient. Never returns Prime.
    """
    from .enumeration import catalog_candidates, default_catalog
    _nontrivial(x)
    if catalog is None:
        catalog = default_catalog()
    reach = max(catalog.max_order, caps.on_the_fly_order)
    top = max_order // 2
    if top > reach:
        raise CatalogInsufficient(top, reach)
    kappa = x.order - 1 if is_null(x) else None
    xinv = _cheap_invariants(x)
    cands = {n: catalog_candidates(n, catalog) for n in range(2, top + 1)}
    has_x: dict[int, bool] = {}
    profiles: dict[int, list] = {}

    def divides(y: FiniteSemigroup) -> bool:
        key = id(y)
        if key not in has_x:
            if y.order % x.order:
                has_x[key] = False
            elif kappa is not None:
                has_x[key] = null_factor_refusal(y, kappa) is None
            else:
                has_x[key] = direct_factor(y, x, catalog) is not None
        return has_x[key]

    checked = 0
    for size in range(4, max_order + 1):
        for a in range(size // 2, 1, -1):
            if size % a:
                continue
            b = size // a
            if b < 2 or b > a or size % x.order:
                continue
            for i, y0 in enumerate(cands[a]):
                if divides(y0):
                    continue
                for j, y1 in enumerate(cands[b]):
                    if a == b and j < i:
                        continue
                    if divides(y1):
                        continue
                    checked += 1
                    if kappa is not None:
                        for y in (y0, y1):
                            if id(y) not in profiles:
                                profiles[id(y)] = _class_profile(y)
                        prof = [(s0 * s1, p0 * p1) for s0, p0 in profiles[id(y0)]
                                for s1, p1 in profiles[id(y1)]]
                        if not _null_divides(prof, kappa):
                            continue
                    else:
                        inv0, inv1 = _cheap_invariants(y0), _cheap_invariants(y1)
                        if any((u * v) % w for u, v, w in zip(inv0, inv1, xinv)):
                            continue
                        if direct_factor(direct_product(y0, y1), x, catalog) is None:
                            continue
                    cert = _counterexample(x, kappa, y0, y1, catalog)
                    return PrimenessVerdict("TarskiSemigroup", NOT_PRIME, cert)
    bound = {"max_order": max_order, "catalog_max_order": catalog.max_order,
             "catalog_mode": catalog.mode, "on_the_fly_order": caps.on_the_fly_order,
             "pairs_checked": checked}
    return PrimenessVerdict("TarskiSemigroup", UNKNOWN, {"type": "exhaustion", "bound": bound}, bound)
