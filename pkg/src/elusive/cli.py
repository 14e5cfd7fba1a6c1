"""Command-line front end. Every subcommand prints one JSON document.

Exit status: 0 on success, 2 when the query is rejected (bad arguments,
failed preconditions, malformed table data), 1 on an internal error or a
failed verification suite.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .classes import enumerate_element_classes, enumerate_subgroup_classes
from .decide import (PreconditionError, SubgroupCase, a_collection_coverage, decide_elusive,
                     decide_kappa_corollary, kappa_value)
from .delperm import (CycleType, build, cycle_perm, epsilon_type, fuse_cycle_type,
                      jordan_of_cycle_shape, permutation_matrix_on_V, target_group)
from .groups import FAMILIES, GroupSpec, group_order, kappa_rules
from .numth import is_prime, primes_upto
from .oracle import (classify_quadratic_form, derangement_search, find_a5, jordan_partition,
                     psl2, psl3)
from .tables import TableDataError, load_tables

__all__ = ["main", "run", "build_parser", "SUITES"]


class Failed(Exception):
    """A verification suite found a disagreement."""

    def __init__(self, doc: dict):
        super().__init__("verification failed")
        self.doc = doc


def _spec(args) -> GroupSpec:
    return GroupSpec(args.family, args.n, args.p, args.f)


def _add_spec(sp):
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=int, required=True, help="characteristic")
    sp.add_argument("-f", type=int, default=1, help="q = p^f")


# subcommands -------------------------------------------------------------------

def cmd_decide(args) -> dict:
    spec, case = _spec(args), SubgroupCase.parse(args.case)
    tables = load_tables(args.data) if args.data else None
    fn = decide_kappa_corollary if args.method == "kappa" else decide_elusive
    verdict = fn(spec, case, args.r, literal=args.literal, tables=tables)
    return {"T": str(spec), "case": str(case), "r": args.r, "method": args.method,
            **verdict.to_dict()}


def cmd_kappa(args) -> dict:
    spec = _spec(args)
    out = {"T": str(spec), "r": args.r}
    try:
        out["report"] = kappa_rules(spec, args.r).to_dict()
    except ValueError as exc:
        if group_order(spec) % args.r:
            raise
        out["report"] = None
        out["report_skipped"] = str(exc)
    out["exact"] = kappa_value(spec, args.r)
    return out


def cmd_classes(args) -> dict:
    spec = _spec(args)
    if args.subgroups:
        subs = enumerate_subgroup_classes(spec, args.r)
        return {"T": str(spec), "r": args.r, "count": len(subs),
                "subgroups": [[lab.to_dict() for lab in sub] for sub in subs]}
    labels = enumerate_element_classes(spec, args.r)
    return {"T": str(spec), "r": args.r, "count": len(labels),
            "classes": [lab.to_dict() for lab in labels]}


def cmd_fuse(args) -> dict:
    ct = CycleType.parse(args.cycle)
    label = fuse_cycle_type(ct, args.d, args.p)
    return {"cycle": str(ct), "d": args.d, "p": args.p, "T": str(target_group(args.d, args.p)),
            **label.to_dict()}


def cmd_coverage(args) -> dict:
    tables = load_tables(args.data) if args.data else None
    reports, skipped = [], 0
    for d in range(args.dmin, args.dmax + 1):
        for p in args.primes:
            for r in primes_upto(args.rmax):
                try:
                    rep = a_collection_coverage(d, p, r, tables)
                except PreconditionError:
                    skipped += 1
                    continue
                reports.append(rep.to_dict())
    return {"instances": len(reports), "skipped": skipped,
            "elusive": sum(r["elusive"] for r in reports), "reports": reports}


def cmd_tables(args) -> dict:
    tables = load_tables(args.data) if args.data else load_tables()
    summary = {"path": tables.path, "socles": len(tables.socles), "cases": len(tables.cases),
               "rows": len(tables.rows), "valid": True}
    return summary if args.validate else {**summary, **tables.to_dict()}


# verification suites ----------------------------------------------------------

def _scope(items: list, args) -> list:
    if args.sample and args.sample < len(items):
        return random.Random(args.seed).sample(items, args.sample)
    return items


def suite_lowdim_psl2(args) -> list[dict]:
    qs = [q for q in primes_upto(args.qmax) if q >= 11 and q % 10 in (1, 9)]
    out = []
    for q in _scope(qs, args):
        grp = psl2(q)
        a5 = find_a5(grp)
        index = len(grp) // len(a5)
        spec, case = GroupSpec("PSL", 2, q), SubgroupCase("lowdim", case_id="L2-A5")
        for r in primes_upto(q):
            if index % r:
                continue
            brute = not derangement_search(grp, a5, r)
            try:
                engine = decide_elusive(spec, case, r).elusive
            except PreconditionError:
                engine = None
            out.append({"q": q, "r": r, "oracle": brute, "engine": engine, "ok": brute == engine})
    return out


def suite_jordan(args) -> list[dict]:
    cases = [(d, p, h) for d in range(5, args.dmax + 1) for p in (2, 3, 5, 7)
             for h in range(1, d // p + 1)]
    out = []
    for d, p, h in _scope(cases, args):
        ct = CycleType(p, h, d - p * h)
        x = permutation_matrix_on_V(cycle_perm(ct), build(d, p))
        brute = jordan_partition(x, p)
        engine = list(jordan_of_cycle_shape(ct, d, p).jordan)
        out.append({"d": d, "p": p, "cycle": str(ct), "oracle": brute, "engine": engine,
                    "ok": brute == engine})
    return out


def suite_forms(args) -> list[dict]:
    cases = [(d, p) for d in range(5, args.dmax + 1) for p in primes_upto(args.pmax)
             if not (p == 2 and d % 4 == 2)]
    out = []
    for d, p in _scope(cases, args):
        dm = build(d, p)
        brute = classify_quadratic_form(dm.gram, p, dm.qdiag)
        eps = epsilon_type(d, p)
        engine = {1: "plus", -1: "minus"}.get(eps, "odd-dim")
        out.append({"d": d, "p": p, "oracle": brute, "engine": engine, "ok": brute == engine})
    return out


def suite_classes(args) -> list[dict]:
    groups = [("PSL", 2, q) for q in primes_upto(args.qmax) if q >= 5]
    groups += [("PSL", 3, p) for p in (2, 3) if p <= args.qmax]
    out = []
    for fam, n, p in _scope(groups, args):
        grp = (psl2 if n == 2 else psl3)(p)
        spec = GroupSpec(fam, n, p)
        for r in primes_upto(p * p + p + 1):
            if len(grp) % r:
                continue
            brute = len(grp.classes_of_order(r))
            engine = sum(lab.nclasses for lab in enumerate_element_classes(spec, r))
            out.append({"T": str(spec), "r": r, "oracle": brute, "engine": engine,
                        "ok": brute == engine})
    return out


SUITES = {"lowdim-psl2": suite_lowdim_psl2, "jordan": suite_jordan, "forms": suite_forms,
          "classes": suite_classes}


def cmd_verify(args) -> dict:
    checks = SUITES[args.suite](args)
    doc = {"suite": args.suite, "checks": len(checks),
           "failures": [c for c in checks if not c["ok"]]}
    doc["passed"] = not doc["failures"]
    if args.verbose:
        doc["results"] = checks
    if not doc["passed"]:
        raise Failed(doc)
    return doc


# plumbing ---------------------------------------------------------------------

def _prime_list(text: str) -> list[int]:
    vals = [int(x) for x in text.split(",") if x.strip()]
    bad = [v for v in vals if not is_prime(v)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {bad}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="elusive", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--human", action="store_true", help="plain text instead of JSON")
    ap.add_argument("--data", help="table data file (overrides ELUSIVE_DATA)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("decide", help="is T r-elusive on the cosets of H")
    _add_spec(sp)
    sp.add_argument("--case", required=True, help="A:d=16, B:5, lowdim:L2-A5 or S:name,order=N")
    sp.add_argument("-r", type=int, required=True)
    sp.add_argument("--method", choices=("theorem", "kappa"), default="theorem")
    sp.add_argument("--literal", action="store_true",
                    help="use the uncorrected A-case clause (c)")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("kappa", help="bounds on and value of kappa(T, r)")
    _add_spec(sp)
    sp.add_argument("-r", type=int, required=True)
    sp.set_defaults(func=cmd_kappa)

    sp = sub.add_parser("classes", help="classes of elements of order r")
    _add_spec(sp)
    sp.add_argument("-r", type=int, required=True)
    sp.add_argument("--subgroups", action="store_true", help="list subgroup classes instead")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("fuse", help="T-class of a permutation of A_d")
    sp.add_argument("--cycle", required=True, help="cycle type such as 3^2,1^2")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.set_defaults(func=cmd_fuse)

    sp = sub.add_parser("coverage", help="sweep of the A_d cases by class fusion")
    sp.add_argument("--dmin", type=int, default=8)
    sp.add_argument("--dmax", type=int, default=12)
    sp.add_argument("--primes", type=_prime_list, default=[2, 3, 5, 7])
    sp.add_argument("--rmax", type=int, default=13)
    sp.set_defaults(func=cmd_coverage)

    sp = sub.add_parser("verify", help="brute-force cross-checks")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--qmax", type=int, default=41)
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--pmax", type=int, default=13)
    sp.add_argument("--sample", type=int, default=0, help="check a random subset of this size")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--verbose", action="store_true", help="include every check")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="dump or validate the table data")
    sp.add_argument("--validate", action="store_true", help="only report counts")
    sp.set_defaults(func=cmd_tables)
    return ap


def render(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _human(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_human(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}: ({len(val)})")
            for item in val:
                lines.append(_human(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(line for line in lines if line)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    status = 0
    try:
        doc = args.func(args)
    except Failed as exc:
        doc, status = exc.doc, 1
    except TableDataError as exc:
        doc, status = {"error": str(exc), "row": exc.row_id, "kind": "table-data"}, 2
    except (PreconditionError, ValueError) as exc:
        doc = {"error": str(exc), "kind": "precondition"}
        if isinstance(exc, PreconditionError):
            doc["degree_divisible"] = exc.degree_divisible
        status = 2
    except Exception as exc:  # noqa: BLE001
        doc, status = {"error": f"{type(exc).__name__}: {exc}", "kind": "internal"}, 1
    out.write((_human(doc) if args.human else render(doc)) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
