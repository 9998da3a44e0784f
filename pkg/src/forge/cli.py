"""``forge`` command line.

Verbs: analyze, factor, prime, subquotient, enumerate, verify-paper; plus
``forge --recheck REPORT`` to replay the certificates of an earlier JSON report.

Inputs are zoo names (see ``forge.zoo``) or table files; zoo names win.
Exit codes: 0 decided / pass, 1 error, 2 unknown within the search bound,
3 verification failure (verify-paper or --recheck).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .certificates import check_certificate, table_json
from .config import caps
from .errors import CatalogInsufficient, ForgeError, UnknownName
from .kernel import FiniteGroup, FiniteSemigroup, as_group

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN, EXIT_FAIL = 0, 1, 2, 3


def load_input(name: str) -> FiniteSemigroup:
    """Zoo name first, then a table file path."""
    from .tablefile import read_table
    from .zoo import resolve
    try:
        s = resolve(name)
    except UnknownName:
        if not Path(name).is_file():
            raise UnknownName(f"{name!r} is neither a zoo name nor a table file") from None
        s = read_table(name)
    if s.label is None:
        s.label = name
    return s


def load_group(name: str) -> FiniteGroup:
    s = load_input(name)
    return s if isinstance(s, FiniteGroup) else as_group(s)


def _catalog(args, reach: int = 4):
    """--catalog, else $FORGE_CATALOG or a fresh enumeration up to ``reach``."""
    from .enumeration import default_catalog, load_catalog
    if getattr(args, "catalog", None):
        return load_catalog(args.catalog)
    if reach > caps.enumeration_cap:
        reach = 4
    return default_catalog(max(4, reach))


class Report:
    def __init__(self, verb: str, inputs: list[str], options: dict):
        self.data: dict[str, Any] = {"tool": "forge", "version": __version__, "verb": verb,
                                     "inputs": inputs, "options": options, "results": [],
                                     "certificates": []}
        self.lines: list[str] = []

    def result(self, line: str, **fields) -> None:
        self.lines.append(line)
        self.data["results"].append({"summary": line, **fields})

    def certificate(self, cert: dict, inputs: list[str] | None = None) -> None:
        self.data["certificates"].append({"inputs": inputs or [], "certificate": cert})

    def emit(self, args, status: str) -> None:
        self.data["status"] = status
        text = json.dumps(self.data, default=_json_default)
        if args.report:
            Path(args.report).write_text(text)
        if args.json:
            print(text)
        else:
            for ln in self.lines:
                print(ln)
            print(f"status: {status}")


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


# --- verbs ----------------------------------------------------------------------

def cmd_analyze(args) -> int:
    from .groups import center, is_simple, minimal_normal_subgroups
    from .structure import action_classes, cancellativity, skeleton
    rep = Report("analyze", [args.input], {})
    s = load_input(args.input)
    ac = action_classes(s)
    canc = cancellativity(s)
    sk, inc = skeleton(s)
    rep.result(f"{args.input}: order {s.order}, {len(s.idempotents())} idempotents, "
               f"{int(s.product_flags().sum())} product elements", order=s.order)
    rep.result(f"action classes ({ac.n_classes}): "
               + " ".join("{" + ",".join(s.name(x) for x in c) + "}" for c in ac.classes),
               classes=[list(c) for c in ac.classes],
               product_counts=list(ac.per_class_product_count))
    rep.result(f"cancellative: left={canc.left} right={canc.right} weak={canc.weak}",
               cancellativity=canc.__dict__)
    rep.result(f"skeleton: order {sk.order}, elements {[s.name(int(x)) for x in inc.images]}",
               skeleton=inc.images.tolist())
    ident = s.identity_element()
    rep.result(f"identity: {None if ident is None else s.name(ident)}, commutative: {s.is_commutative()}")
    g = s if isinstance(s, FiniteGroup) else None
    if g is None and ident is not None:
        try:
            g = as_group(s)
        except ForgeError:
            g = None
    if g is not None:
        mins = minimal_normal_subgroups(g)
        rep.result(f"group: simple={is_simple(g)}, center order {center(g).order}, "
                   f"{len(mins)} minimal normal subgroup(s) of orders {[m.order for m in mins]}",
                   minimal_normal=[list(m.members) for m in mins])
    rep.emit(args, "decided")
    return EXIT_OK


def cmd_factor(args) -> int:
    from .groups import direct_decomposition
    from .primeness import decomposition_certificate
    from .structure import direct_factor, null_factor, null_factor_refusal
    s = load_input(args.input)
    opts = {"by": args.by, "null": args.null}
    inputs = [args.input] + ([args.by] if args.by else [])
    rep = Report("factor", inputs, opts)
    if args.null is not None:
        w = null_factor(s, args.null)
        if w is None:
            r = null_factor_refusal(s, args.null)
            rep.result(f"Null({args.null}) is not a direct factor: {r.reason}", factor=False)
            rep.certificate({"type": "null_refusal", "subject": table_json(s), "kappa": args.null,
                             "class": list(r.class_members)}, [args.input])
        else:
            rep.result(f"{args.input} = S0 x Null({args.null}) with |S0| = {w.left_factor.order}",
                       factor=True)
            rep.certificate(_factor_cert(s, w), [args.input])
    elif args.by:
        p = load_input(args.by)
        try:
            w = direct_factor(s, p, _catalog(args))
        except CatalogInsufficient as exc:
            rep.result(f"unknown: {exc}", factor=None)
            rep.emit(args, "unknown")
            return EXIT_UNKNOWN
        if w is None:
            rep.result(f"{args.by} is not a direct factor of {args.input} (all cofactors of order "
                       f"{s.order // p.order if s.order % p.order == 0 else '-'} tried)", factor=False)
        else:
            rep.result(f"{args.input} = {args.by} x Q with |Q| = {w.right_factor.order}", factor=True,
                       cofactor=table_json(w.right_factor))
            rep.certificate(_factor_cert(s, w), [args.input])
    else:
        g = s if isinstance(s, FiniteGroup) else as_group(s)
        d = direct_decomposition(g)
        labels = [f"order {f.order}" for f in d.factors]
        rep.result(f"{args.input} has {len(d)} indecomposable factor(s): {', '.join(labels)}",
                   factors=[table_json(f) for f in d.factors])
        if len(d) > 1:
            rep.certificate(decomposition_certificate(g, d), [args.input])
    rep.emit(args, "decided")
    return EXIT_OK


def _factor_cert(s, w) -> dict:
    return {"type": "factor_witness", "subject": table_json(s), "left": table_json(w.left_factor),
            "right": table_json(w.right_factor), "iso": w.iso.images.tolist()}


NOTIONS = ("tarski", "rhodes-direct", "rhodes-semidirect", "modified-rhodes-direct")


def cmd_prime(args) -> int:
    from . import primeness as pr
    s = load_input(args.input)
    universe = list(args.universe or [])
    rep = Report("prime", [args.input] + universe,
                 {"notion": args.notion, "universe": universe, "max_order": args.max_order})
    try:
        g = s if isinstance(s, FiniteGroup) else as_group(s)
    except ForgeError:
        g = None
    if g is None:
        if args.notion not in ("tarski", "all"):
            raise ForgeError("only Tarski primeness is decided for semigroups that are not groups")
        try:
            verdicts = [pr.tarski_falsify_semigroup(s, args.max_order,
                                                     _catalog(args, args.max_order // 2))]
        except CatalogInsufficient as exc:
            rep.result(f"unknown: {exc}")
            rep.emit(args, "unknown")
            return EXIT_UNKNOWN
    else:
        uni = [(n, load_group(n)) for n in universe]
        table = {"tarski": lambda: pr.tarski_prime_group(g),
                 "rhodes-semidirect": lambda: pr.rhodes_semidirect_prime_group(g),
                 "rhodes-direct": lambda: pr.rhodes_direct_prime_group(g, uni),
                 "modified-rhodes-direct": lambda: pr.modified_rhodes_direct_prime_group(g)}
        notions = NOTIONS if args.notion == "all" else (args.notion,)
        verdicts = [table[n]() for n in notions]
    unknown = False
    for v in verdicts:
        extra = ""
        case = v.certificate.get("case")
        if case:
            extra = f" (sufficient case {case})"
        if v.bound:
            extra = f" (bound: {json.dumps(v.bound, default=_json_default)})"
        rep.result(f"{v.kind}: {v.verdict}{extra}", **{k: val for k, val in v.to_dict().items()
                                                       if k != "certificate"})
        rep.certificate(v.certificate, [args.input])
        unknown |= not v.decided
    status = "unknown" if unknown else "decided"
    rep.emit(args, status)
    return EXIT_UNKNOWN if unknown else EXIT_OK


def cmd_subquotient(args) -> int:
    from .groups import is_subquotient
    h, g = load_group(args.h), load_group(args.g)
    rep = Report("subquotient", [args.h, args.g], {})
    w = is_subquotient(h, g)
    if w is None:
        rep.result(f"{args.h} is not a subquotient of {args.g}", subquotient=False)
        rep.certificate({"type": "not_subquotient", "target": table_json(h), "ambient": table_json(g)},
                        [args.h, args.g])
    else:
        rep.result(f"{args.h} = K/N inside {args.g} with |K| = {w.subgroup.order}, |N| = {len(w.kernel)}",
                   subquotient=True, **w.to_dict())
        rep.certificate({"type": "subquotient", "ambient": table_json(g), "target": table_json(h),
                         **w.to_dict()}, [args.h, args.g])
    rep.emit(args, "decided")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import enumerate_semigroups, save_catalog
    rep = Report("enumerate", [], {"max_order": args.max_order, "mode": args.mode,
                                   "idempotent_only": args.idempotent, "out": args.out})
    cat = enumerate_semigroups(args.max_order, args.mode, args.idempotent,
                               allow_order_7=args.allow_order_7)
    for n, c in sorted(cat.counts.items()):
        rep.result(f"order {n}: {c}", order=n, count=c)
    if args.out:
        save_catalog(cat, args.out)
        rep.result(f"catalog written to {args.out}")
    rep.emit(args, "decided")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .reproduce import verify_paper
    rep = Report("verify-paper", [], {"only": args.only, "p": args.p, "kappa": args.kappa})
    results = verify_paper(args.only, p=args.p, kappa=args.kappa)
    for a in results:
        rep.result(f"[{'PASS' if a.passed else 'FAIL'}] {a.check}: {a.claim}"
                   + (f"  ({a.detail})" if a.detail else ""),
                   check=a.check, claim=a.claim, status="PASS" if a.passed else "FAIL")
        if a.certificate is not None:
            rep.certificate(a.certificate)
    ok = all(a.passed for a in results)
    rep.emit(args, "pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


def recheck(path: str, args) -> int:
    data = json.loads(Path(path).read_text())
    rep = Report("recheck", [path], {})
    ok = True
    for k, entry in enumerate(data.get("certificates", [])):
        cert = entry["certificate"]
        passed, msg = check_certificate(cert)
        names = entry.get("inputs") or []
        if passed and names and "subject" in cert:
            try:
                subject = load_input(names[0])
            except ForgeError as exc:
                passed, msg = False, f"cannot resolve input {names[0]!r}: {exc}"
            else:
                if subject.table.tolist() != cert["subject"]:
                    passed, msg = False, f"certificate subject differs from input {names[0]!r}"
        ok &= passed
        rep.result(f"[{'PASS' if passed else 'FAIL'}] certificate {k}: {msg}")
    if not data.get("certificates"):
        rep.result("report holds no certificates")
    rep.emit(args, "pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_FAIL


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forge",
                                 description="Primeness of finite semigroups and groups.")
    ap.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    ap.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    # the same flags after the verb; SUPPRESS keeps them from resetting the top-level values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--report", metavar="PATH", default=argparse.SUPPRESS)
    ap.add_argument("--version", action="version", version=f"forge {__version__}")
    ap.add_argument("--recheck", metavar="REPORT", help="re-verify the certificates of a report")
    sub = ap.add_subparsers(dest="verb")

    p = sub.add_parser("analyze", parents=[common], help="action classes, cancellativity, skeleton")
    p.add_argument("input")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("factor", parents=[common], help="direct factors and decompositions")
    p.add_argument("input")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--by", metavar="P", help="test whether P is a direct factor")
    grp.add_argument("--null", metavar="KAPPA", type=int, help="test for a Null(KAPPA) factor")
    p.add_argument("--catalog", metavar="DIR", help="semigroup catalog for cofactor search")
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("prime", parents=[common], help="primeness verdicts")
    p.add_argument("input")
    p.add_argument("--notion", choices=NOTIONS + ("all",), default="all")
    p.add_argument("--universe", nargs="*", metavar="G",
                   help="groups whose pairwise products the Rhodes-direct search tries")
    p.add_argument("--max-order", type=int, default=8,
                   help="largest |Y0 x Y1| searched for semigroups (default 8)")
    p.add_argument("--catalog", metavar="DIR")
    p.set_defaults(fn=cmd_prime)

    p = sub.add_parser("subquotient", parents=[common], help="is H a subquotient of G")
    p.add_argument("h")
    p.add_argument("g")
    p.set_defaults(fn=cmd_subquotient)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate semigroups")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--mode", choices=("iso", "anti"), default="iso")
    p.add_argument("--idempotent", action="store_true", help="only bands (x x = x)")
    p.add_argument("--out", metavar="DIR", help="save the catalog here")
    p.add_argument("--allow-order-7", action="store_true", help="lift the order cap to 7 (hours)")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce the finite examples")
    p.add_argument("--only", nargs="*", metavar="ID",
                   help="subset of: null S3 p5 Q8D4 ZpZp2 pq1q2 audit")
    p.add_argument("--p", type=int, help="prime for p5 (default 2) and ZpZp2 (default 3)")
    p.add_argument("--kappa", type=int, help="single kappa for null (default 1, 2, 3)")
    p.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.recheck:
            return recheck(args.recheck, args)
        if not getattr(args, "fn", None):
            ap.print_help()
            return EXIT_ERROR
        return args.fn(args)
    except (ForgeError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"forge: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
