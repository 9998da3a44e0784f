"""One-shot reproduction of the finite constructions and counterexamples.

Each check id maps to a function returning a list of ``Assertion`` records:
``null`` (Null(kappa) is not Tarski-prime among semigroups), ``S3`` (groups
that are Rhodes-prime for direct but not semidirect products), ``p5`` (the
order p^5 quotient of H x H), ``Q8D4``, ``ZpZp2``, ``pq1q2`` and ``audit``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .certificates import check_certificate, table_json
from .constructors import (cyclic_group, dihedral_group, heisenberg_group, null_semigroup,
                           quaternion_group, square_class_semigroup, symmetric_group)
from .groups import (generate, is_subquotient, minimal_normal_subgroups, monolith, quotient,
                     semidirect_complement, subgroup_group)
from .iso import isomorphic
from .kernel import FiniteGroup, Morphism, direct_product
from .primeness import (NOT_PRIME, PRIME, implication_audit, rhodes_direct_prime_group,
                        rhodes_semidirect_prime_group, tarski_prime_group)
from .structure import null_factor, null_factor_refusal
from .zoo import (a16_embeddings, metacyclic, p5_group, resolve, two_prime_semidirect,
                  zoo_groups, zp2_subquotient)

__all__ = ["Assertion", "CHECKS", "verify_paper", "DEFAULT_SELECTION"]


@dataclass
class Assertion:
    check: str
    claim: str
    passed: bool
    detail: str = ""
    certificate: dict | None = None
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"check": self.check, "claim": self.claim,
                "status": "PASS" if self.passed else "FAIL", "detail": self.detail,
                "certificate": self.certificate, "seconds": round(self.seconds, 3)}


@dataclass
class _Collector:
    check: str
    out: list[Assertion] = field(default_factory=list)

    def add(self, claim: str, passed: bool, detail: str = "", certificate: dict | None = None):
        if certificate is not None and passed:
            ok, msg = check_certificate(certificate)
            passed = ok
            detail = f"{detail}; recheck {msg}" if detail else f"recheck {msg}"
        self.out.append(Assertion(self.check, claim, bool(passed), detail, certificate))


def _least_bad_n(kappa: int) -> int:
    return next(n for n in range(1, 10 * (kappa + 2)) if (n + 1) % (kappa + 1))


def check_null(kappa: int = 1, **_) -> list[Assertion]:
    c = _Collector("null")
    s = square_class_semigroup(kappa)
    x = null_semigroup(kappa)
    n = _least_bad_n(kappa)
    nul_n = null_semigroup(n)
    c.add(f"witness S has 2(kappa+1) = {2 * (kappa + 1)} elements", s.order == 2 * (kappa + 1))
    for name, y in (("S", s), (f"Null({n})", nul_n)):
        r = null_factor_refusal(y, kappa)
        cert = None if r is None else {"type": "null_refusal", "subject": table_json(y),
                                       "kappa": kappa, "class": list(r.class_members)}
        c.add(f"Null({kappa}) is not a direct factor of {name}", r is not None,
              "" if r is None else r.reason, cert)
    y = direct_product(s, nul_n)
    w = null_factor(y, kappa)
    cert = None
    if w is not None:
        cert = {"type": "factor_witness", "subject": table_json(y), "left": table_json(w.left_factor),
                "right": table_json(w.right_factor), "iso": w.iso.images.tolist()}
    c.add(f"Null({kappa}) is a direct factor of S x Null({n})", w is not None and w.verify(),
          "" if w is None else f"S x Null({n}) = S0 x Null({kappa}) with |S0| = {w.left_factor.order}",
          cert)
    return c.out


def check_s3(**_) -> list[Assertion]:
    c = _Collector("S3")
    groups: list[tuple[str, FiniteGroup]] = [(f"S{n}", symmetric_group(n)) for n in (3, 4, 5)]
    groups += [(f"Z{p}:Z{m}", metacyclic(p, m)) for p, m in ((3, 2), (5, 2), (5, 4), (7, 2), (7, 3), (7, 6))]
    groups += [(f"Z{q}", cyclic_group(q)) for q in (4, 8, 9, 25, 27)]
    for name, g in groups:
        rd = rhodes_direct_prime_group(g)
        rs = rhodes_semidirect_prime_group(g)
        case = rd.certificate.get("case")
        c.add(f"{name} is Rhodes-prime for direct products", rd.verdict == PRIME,
              f"case ({case})", rd.certificate)
        c.add(f"{name} is not Rhodes-prime for semidirect products", rs.verdict == NOT_PRIME,
              "proper normal subgroup", rs.certificate)
    s4 = symmetric_group(4)
    m = monolith(s4)
    v = [x for x in range(24) if s4.element_order(x) == 2 and s4.names[x].count("(") == 2]
    c.add("S4 has monolith V = double transpositions and identity",
          m is not None and set(m.members) == set(v) | {s4.identity})
    k = semidirect_complement(s4, m)
    c.add("S4 = V x| S3", k is not None and isomorphic(subgroup_group(s4, k)[0],
                                                       symmetric_group(3)) is not None)
    return c.out


def check_p5(p: int = 2, **_) -> list[Assertion]:
    c = _Collector("p5")
    g, proj, h = p5_group(p)
    c.add(f"G has order p^5 = {p ** 5}", g.order == p ** 5)
    hh = proj.domain
    c.add("projection H x H -> G is a surjective homomorphism", proj.kind == "surjection")
    m = monolith(g)
    c_id = 1                                  # c = a^0 b^0 c^1
    left = int(proj(c_id * h.order + 0))      # image of (c, I)
    right = int(proj(0 * h.order + c_id))     # image of (I, c)
    gen_l = set(generate(g, [left])[1])
    c.add("G is monolithic", m is not None, f"{len(minimal_normal_subgroups(g))} minimal normal subgroup(s)",
          None if m is None else {"type": "monolith", "subject": table_json(g), "members": list(m.members)})
    c.add("monolith is generated by the image of (c, I)", m is not None and set(m.members) == gen_l,
          f"|M| = {len(gen_l)}")
    c.add("the image of (I, c) generates the same subgroup",
          set(generate(g, [right])[1]) == gen_l)
    _, kernel = generate(hh, [c_id * h.order + (p - 1)])
    cert = {"type": "subquotient", "ambient": table_json(hh), "target": table_json(g),
            "subgroup": list(range(hh.order)), "kernel": sorted(kernel),
            "iso": np.arange(g.order).tolist()}
    c.add("G is a subquotient (quotient) of H x H", True, "K = H x H, N = <(c, c^-1)>", cert)
    c.add("G is not a subquotient of H", g.order > h.order, f"|G| = {g.order} > |H| = {h.order}")
    v = rhodes_direct_prime_group(g, [(f"Heis{p}", h)])
    c.add("G is not Rhodes-prime for direct products (universe {H})", v.verdict == NOT_PRIME,
          "", v.certificate if v.verdict == NOT_PRIME else None)
    return c.out


def check_q8d4(**_) -> list[Assertion]:
    c = _Collector("Q8D4")
    q8, d4 = quaternion_group(), dihedral_group(4)
    emb = a16_embeddings()
    for name in ("Q8", "D4"):
        e = emb[name]
        cert = {"type": "subquotient", "ambient": table_json(e.ambient),
                "target": table_json(e.embedding.domain),
                "subgroup": sorted(e.embedding.images.tolist()), "kernel": [e.ambient.identity]}
        sub = np.array(cert["subgroup"])
        pos = {int(v): i for i, v in enumerate(sub)}
        # subgroup relabelled ascending; iso sends position of f(a) to a
        inv = np.empty(len(sub), dtype=np.int64)
        for a, img in enumerate(e.embedding.images):
            inv[pos[int(img)]] = a
        cert["iso"] = inv.tolist()
        c.add(f"A embeds in {name} x {name}", e.embedding.kind == "embedding",
              "x, y = " + ("(i,1), (j,j)" if name == "Q8" else "(p,1), (q,p)"), cert)
    for name in ("Q8", "D4"):
        s = emb[name].surjection
        kern = np.flatnonzero(s.images == s.codomain.identity)
        c.add(f"A maps onto {name}", s.kind == "surjection", f"kernel of order {len(kern)}")
    for h, g, hn, gn in ((q8, d4, "Q8", "D4"), (d4, q8, "D4", "Q8")):
        w = is_subquotient(h, g)
        c.add(f"{hn} is not a subquotient of {gn}", w is None, "exhaustive subgroup/kernel search",
              {"type": "not_subquotient", "target": table_json(h), "ambient": table_json(g)})
    for h, g, hn, gn in ((q8, d4, "Q8", "D4"), (d4, q8, "D4", "Q8")):
        w = is_subquotient(h, direct_product(g, g))
        cert = None if w is None else {"type": "subquotient", "ambient": table_json(w.ambient),
                                       "target": table_json(h), **w.to_dict()}
        c.add(f"{hn} is a subquotient of {gn} x {gn} (generic search)", w is not None,
              "" if w is None else f"|K| = {w.subgroup.order}, |N| = {len(w.kernel)}", cert)
    mq, md = monolith(q8), monolith(d4)
    c.add("Q8 has monolith {1, -1}", mq is not None and {q8.names[x] for x in mq.members} == {"1", "-1"})
    c.add("D4 has monolith {e, p^2}", md is not None and {d4.names[x] for x in md.members} == {"e", "p^2"})
    return c.out


def check_zpzp2(p: int = 3, **_) -> list[Assertion]:
    c = _Collector("ZpZp2")
    w = zp2_subquotient(p)
    h = heisenberg_group(p)
    target = w.target
    c.add(f"subgroup {{(u, a^i b^j c^k) : u = i mod {p}}} has order p^4 = {p ** 4}",
          w.subgroup.order == p ** 4)
    c.add(f"kernel <({p}, c^-1)> is central of order {p}", len(w.kernel) == p)
    cert = {"type": "subquotient", "ambient": table_json(w.ambient), "target": table_json(target),
            **w.to_dict()}
    c.add(f"quotient is isomorphic to Z{p * p} x| Z{p} (action by {1 + p})", w.verify(), "", cert)
    q = w.quotient_group()
    # (1, a) and (0, b) lie in the subgroup (u = exponent of a mod p); (1, b) does not
    kg, inc = subgroup_group(w.ambient, w.subgroup)
    pos = {int(v): i for i, v in enumerate(inc.images)}
    _, pr = quotient(kg, [pos[x] for x in w.kernel])
    a_idx, b_idx = p * p, p                    # indices of a and b in H
    one_a = int(pr(pos[1 * h.order + a_idx]))
    zero_b = int(pr(pos[0 * h.order + b_idx]))
    c.add(f"(1, b) is outside the subgroup; (1, a) and (0, b) are inside",
          (1 * h.order + b_idx) not in pos and (1 * h.order + a_idx) in pos)
    c.add(f"image of (1, a) has order {p * p}, image of (0, b) has order {p}",
          q.element_order(one_a) == p * p and q.element_order(zero_b) == p)
    c.add(f"conjugation by (0, b) sends the image of (1, a) to its {1 + p}-th power",
          q.conj(zero_b, one_a) == q.power(one_a, 1 + p))
    m = monolith(target)
    pz = {a * p for a in range(p)}
    c.add(f"target is monolithic with monolith {p}Z{p * p} x {{e}}",
          m is not None and {x // p for x in m.members} == pz and all(x % p == 0 for x in m.members))
    c.add(f"target is not a subquotient of Z{p * p}", target.order > p * p)
    c.add(f"target is not a subquotient of Heis{p}", isomorphic(target, h) is None,
          "same order, not isomorphic",
          {"type": "not_subquotient", "target": table_json(target), "ambient": table_json(h)})
    return c.out


def check_pq1q2(**_) -> list[Assertion]:
    c = _Collector("pq1q2")
    for p, q0, q1 in ((2, 3, 5), (3, 7, 7)):
        g = two_prime_semidirect(p, q0, q1)
        name = f"(Z{q0} x Z{q1}) x| Z{p}"
        t = tarski_prime_group(g)
        c.add(f"{name} is Tarski-prime (directly indecomposable)", t.verdict == PRIME, "", t.certificate)
        mins = minimal_normal_subgroups(g)
        want = q0 + 1 if q0 == q1 else 2
        c.add(f"{name} is not monolithic", len(mins) >= 2, f"{len(mins)} minimal normal subgroups")
        c.add(f"{name} has exactly {want} minimal normal subgroups", len(mins) == want)
        if (p, q0, q1) == (2, 3, 5):
            c.add("(Z3 x Z5) x| Z2 is the dihedral group of order 30",
                  isomorphic(g, dihedral_group(15)) is not None)
    return c.out


def check_audit(**_) -> list[Assertion]:
    c = _Collector("audit")
    r = implication_audit(zoo_groups(32), zoo_groups(8))
    c.add(f"no implication violated on {len(r.rows)} zoo groups of order <= 32", not r.violations,
          str(r.violations))
    s = r.strictness
    c.add("first implication strict (Z4 or S3)", bool({"Z4", "S3"} & set(s[1])), ", ".join(s[1]))
    c.add("second implication strict (Q8 and D4)", {"Q8", "D4"} <= set(s[2]), ", ".join(s[2]))
    c.add("third implication strict (order-30 dihedral)", "D15" in s[3], ", ".join(s[3]))
    return c.out


CHECKS: dict[str, Callable[..., list[Assertion]]] = {
    "null": check_null, "S3": check_s3, "p5": check_p5, "Q8D4": check_q8d4,
    "ZpZp2": check_zpzp2, "pq1q2": check_pq1q2, "audit": check_audit,
}
DEFAULT_SELECTION = tuple(CHECKS)


def verify_paper(selection=None, *, p: int | None = None, kappa: int | None = None) -> list[Assertion]:
    """Run the selected checks. ``p`` applies to p5 (default 2) and ZpZp2
    (default 3); ``kappa`` to null (default: 1, 2 and 3)."""
    out: list[Assertion] = []
    for name in selection or DEFAULT_SELECTION:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        runs = [{}]
        if name == "null":
            runs = [{"kappa": k} for k in ([kappa] if kappa else [1, 2, 3])]
        elif name == "p5" and p is not None:
            runs = [{"p": p}]
        elif name == "ZpZp2" and p is not None:
            runs = [{"p": p}]
        for kw in runs:
            t = time.perf_counter()
            res = CHECKS[name](**kw)
            dt = (time.perf_counter() - t) / max(len(res), 1)
            for a in res:
                a.seconds = dt
            out.extend(res)
    return out
