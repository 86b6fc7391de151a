"""Command-line entry point: ``wedgedeg report | verify | table``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .catalog import dihedral_group, parameter_n, parse_group_spec, quaternion_group, split_spec
from .degrees import (
    COMMUTING,
    WEDGE_TRIVIAL,
    BRUTE_FORCE_CAP,
    DegreeProfile,
    TheoremReport,
    brute_force_degree,
    dihedral_closed_form,
    fraction_str,
    quaternion_closed_form,
    unidegree_flags,
    verify_bounds,
    verify_coprime_multiplicativity,
)
from .errors import InputError, ParseError, ResourceLimit
from .groups import abelianization_invariants, center, conjugacy_classes, derived_subgroup
from .homology import DEFAULT_MAX_ORDER as H2_MAX_ORDER, bar_h1, bar_h2, normalize_invariants
from .wedge import exterior_center, exterior_square, is_capable, schur_multiplier

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def analyse(spec, max_n):
    """Group, exterior square, degree profile and theorem report for one spec."""
    G = parse_group_spec(spec)
    S = exterior_square(G)
    P = DegreeProfile(G, S)
    report = TheoremReport()
    for n in range(1, max_n + 1):
        report.extend(verify_bounds(G, S, n, profile=P))
    return G, S, P, report


def build_report(spec, max_n, G=None, S=None, P=None, theorems=None):
    if G is None:
        G, S, P, theorems = analyse(spec, max_n)
    M = schur_multiplier(S)
    flags = unidegree_flags(G, S, max_n, P)
    return {
        "group": G.label or spec,
        "order": G.order,
        "parameter_n": parameter_n(G),
        "classes": len(conjugacy_classes(G)),
        "center_order": len(center(G)),
        "exterior_center_order": len(exterior_center(S)),
        "derived_order": len(derived_subgroup(G)),
        "multiplier_order": M.multiplier_order,
        "multiplier_invariants": M.abelian_invariants,
        "exterior_square_order": S.pairing.order,
        "capable": is_capable(S),
        "flags": {
            "unicentral": flags.is_unicentral,
            "unidegree": flags.is_unidegree,
            "multiple_unidegree": flags.is_multiple_unidegree,
        },
        "degrees": {
            "n": list(range(1, max_n + 1)),
            "d": [fraction_str(P.d(n)) for n in range(1, max_n + 1)],
            "Dwedge": [fraction_str(P.D(n)) for n in range(1, max_n + 1)],
        },
        "theorems": theorems.to_json(),
    }


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyResult:
    spec: str
    checks: list = field(default_factory=list)
    report: TheoremReport | None = None

    @property
    def ok(self):
        return all(c.ok for c in self.checks) and (self.report is None or self.report.ok)


def oracle_checks(spec, G, S, P, max_n):
    out = []
    for n in range(1, max_n + 1):
        if G.order ** (n + 1) > BRUTE_FORCE_CAP:
            out.append(Check(f"brute-force n={n}", True, "skipped: above tuple cap"))
            continue
        bd = brute_force_degree(G, n, COMMUTING)
        bD = brute_force_degree(G, n, WEDGE_TRIVIAL, S)
        out.append(Check(f"brute-force d_{n}", bd == P.d(n), f"{fraction_str(bd)}"))
        out.append(Check(f"brute-force D_{n}", bD == P.D(n), f"{fraction_str(bD)}"))
    if G.order <= H2_MAX_ORDER:
        h1 = bar_h1(G)
        ab = normalize_invariants(abelianization_invariants(G))
        out.append(Check("bar H1 = G/G'", h1 == ab, f"{h1} vs {ab}"))
        h2 = bar_h2(G)
        M = schur_multiplier(S)
        mi = normalize_invariants(M.abelian_invariants)
        out.append(Check("bar H2 = M(G)", h2 == mi, f"{h2} vs {mi}"))
    else:
        out.append(Check("bar H2 = M(G)", True, "skipped: group above bar-complex cap"))
    fam = G._cache.get("family")
    if fam and fam[0] in ("dihedral", "quaternion") and fam[1] >= 2:
        form = dihedral_closed_form if fam[0] == "dihedral" else quaternion_closed_form
        for m in range(1, max_n + 1):
            want = form(fam[1], m)
            out.append(Check(f"closed form D_{m}", P.D(m) == want, fraction_str(want)))
    parts = split_spec(spec)
    if len(parts) == 2:
        A, B = parse_group_spec(parts[0]), parse_group_spec(parts[1])
        if gcd(A.order, B.order) == 1:
            for n in range(1, max_n + 1):
                r = verify_coprime_multiplicativity(A, B, n, GH=G, S_GH=S)
                out.append(Check(f"coprime product D_{n}", r.holds,
                                 f"{fraction_str(r.lhs)} vs {fraction_str(r.rhs)}"))
    return out


def verify_one(spec, max_n, oracle):
    G, S, P, report = analyse(spec, max_n)
    res = VerifyResult(spec, report=report)
    if oracle:
        res.checks = oracle_checks(spec, G, S, P, max_n)
    return res


def _print_verify(res: VerifyResult, out):
    for e in res.report.entries:
        if not e.applicable:
            status = "n/a "
        else:
            status = "PASS" if e.ok else "FAIL"
        line = f"{status} {res.spec} n={e.n} {e.theorem}"
        if e.applicable:
            line += f": {fraction_str(e.lhs)} <= {fraction_str(e.rhs)}"
            if e.equality_rule:
                line += f" (equality {e.equality}, condition {e.equality_condition_met})"
        print(line, file=out)
    for c in res.checks:
        print(f"{'PASS' if c.ok else 'FAIL'} {res.spec} {c.name}"
              + (f": {c.detail}" if c.detail else ""), file=out)
    print(f"{'OK' if res.ok else 'FAILED'} {res.spec}", file=out)


def parse_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ParseError(f"expected a range lo..hi, got {text!r}") from None
    if lo > hi:
        raise ParseError(f"empty range {text!r}")
    return lo, hi


def table_rows(family, lo, hi, max_m):
    """Rows over every group order in [lo, hi] that the family admits."""
    if family == "dihedral":
        params = [o // 2 for o in range(max(lo, 4), hi + 1) if o % 2 == 0]
        build, form = dihedral_group, dihedral_closed_form
    else:
        params = [o // 4 for o in range(max(lo, 4), hi + 1) if o % 4 == 0]
        build, form = quaternion_group, quaternion_closed_form
    rows = []
    for k in params:
        G = build(k)
        S = exterior_square(G)
        P = DegreeProfile(G, S)
        for m in range(1, max_m + 1):
            got, want = P.D(m), form(k, m)
            rows.append({"family": family, "param": k, "m": m, "computed": fraction_str(got),
                         "closed_form": fraction_str(want), "match": got == want})
    return rows


def cmd_report(args):
    reports = _run_many(args.specs, args.jobs, lambda s: build_report(s, args.max_n))
    doc = reports[0] if len(reports) == 1 else reports
    text = json.dumps(doc, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_verify(args):
    results = _run_many(args.specs, args.jobs,
                        lambda s: verify_one(s, args.max_n, args.oracle == "on"))
    for res in results:
        _print_verify(res, sys.stdout)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_table(args):
    lo, hi = parse_range(args.range)
    rows = table_rows(args.family, lo, hi, args.m)
    cols = ["family", "param", "m", "computed", "closed_form", "match"]
    fh = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "match": str(r["match"]).lower()})
    finally:
        if args.csv:
            fh.close()
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


def _run_many(specs, jobs, fn):
    # results come back in input order whatever the thread count
    if jobs <= 1 or len(specs) == 1:
        return [fn(s) for s in specs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, specs))


def build_parser():
    ap = argparse.ArgumentParser(prog="wedgedeg",
                                 description="Exact multiple commutativity and exterior degrees.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coset-limit", type=int, default=None,
                        help="maximum live cosets during enumeration (env WEDGEDEG_COSET_LIMIT)")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for several groups")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="JSON report of invariants, degrees and bounds")
    p.add_argument("specs", nargs="+", metavar="spec")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", parents=[common], help="check every applicable bound and oracle")
    p.add_argument("specs", nargs="+", metavar="spec")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--oracle", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="computed exterior degrees against the closed forms")
    p.add_argument("family", choices=("dihedral", "quaternion"))
    p.add_argument("range", help="group orders lo..hi")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--csv", metavar="OUT")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "max_n", 1) < 1 or getattr(args, "m", 1) < 1:
        print("error: --max-n and --m must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    saved = os.environ.get("WEDGEDEG_COSET_LIMIT")
    if args.coset_limit is not None:
        os.environ["WEDGEDEG_COSET_LIMIT"] = str(args.coset_limit)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    finally:
        if saved is None:
            os.environ.pop("WEDGEDEG_COSET_LIMIT", None)
        else:
            os.environ["WEDGEDEG_COSET_LIMIT"] = saved


if __name__ == "__main__":
    sys.exit(main())
