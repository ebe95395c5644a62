"""Command-line interface: ``python -m transversal <command> ...``.

Exit codes: 0 success (property holds, suite passed), 1 property fails or a
suite row failed, 2 bad input, 3 a budget ran out before a decision.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from pathlib import Path

from . import catalog
from .bounds import bound_report, three_ut_bounds, two_graph_params
from .constructors import GroupFileError, builtin, data_path, from_file
from .fields import field_condition
from .groups import PermutationGroup
from .semigroup import (PartialTransformation, equivalence_harness, is_regular_orbit,
                        parse_pt_lines, pt_class_representatives, semigroup_regular)
from .subsets import DEFAULT_MAX_SUBSETS, BudgetExceeded
from .ut import (DEFAULT_MAX_WORK, Witness, has_kl_ut, is_k_homogeneous, threshold,
                 verify_witness)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
SUITES = ("core-small", "core-large", "bounds-large", "field-conditions", "infeasible")


class InputError(Exception):
    pass


def load_group(args) -> tuple[PermutationGroup, str]:
    """Group from ``--builtin`` or ``--file``; bare bundled names are accepted too."""
    try:
        if args.builtin:
            return builtin(args.builtin), f"builtin:{args.builtin}"
        path = Path(args.file)
        if not path.exists():
            stem = path.name[:-4] if path.name.endswith(".grp") else path.name
            if data_path(stem).exists():
                return from_file(data_path(stem)), stem
        return from_file(path), str(path)
    except (GroupFileError, ValueError) as exc:
        raise InputError(str(exc)) from None


def describe(G: PermutationGroup, source: str) -> dict:
    return {"source": source, "name": G.name, "degree": G.degree, "order": G.order()}


def emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


# -- commands ------------------------------------------------------------------

def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    G, source = load_group(args)
    n = G.degree
    report = describe(G, source)
    report["transitive"] = G.is_transitive()
    report["primitive"] = G.is_primitive()
    report["transitivity_degree"] = G.transitivity_degree()
    homog, skipped = [], []
    for k in range(1, min(args.max_k, n) + 1):
        if comb(n, k) > args.max_orbit:
            skipped.append(k)
            continue
        if is_k_homogeneous(G, k, args.max_orbit):
            homog.append(k)
    report["homogeneous_k"] = homog
    report["homogeneity_skipped_k"] = skipped
    report["orbital_valencies"] = ([g.valency for g in G.orbital_graphs()]
                                   if G.is_transitive() and n > 1 else None)
    report["timing_ms"] = _ms(t0)
    not_homog = [k for k in range(1, min(args.max_k, n) + 1) if k not in homog + skipped]
    lines = [f"group      {G.name or source}",
             f"degree     {n}",
             f"order      {report['order']}",
             f"transitive {report['transitive']}",
             f"primitive  {report['primitive']}",
             f"{report['transitivity_degree']}-transitive",
             f"k-homogeneous for k in {homog}; not for k in {not_homog}",
             f"orbital-graph valencies {report['orbital_valencies']}"]
    if skipped:
        lines.append(f"homogeneity not computed for k in {skipped} (exceeds --max-orbit)")
    emit(args, report, lines)
    return EXIT_OK


def cmd_ut(args) -> int:
    t0 = time.perf_counter()
    G, source = load_group(args)
    if args.check_witness:
        try:
            data = json.loads(Path(args.check_witness).read_text())
            w = Witness.from_json(data.get("witness", data))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read witness: {exc}") from None
        ok = verify_witness(G, w)
        emit(args, {"witness_valid": ok},
             [f"witness {'re-validates' if ok else 'does NOT re-validate'}"])
        return EXIT_OK if ok else EXIT_FAIL
    try:
        r = has_kl_ut(G, args.k, args.l, max_work=args.max_work,
                      max_subsets=args.max_orbit, jobs=args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = describe(G, source) | {
        "k": args.k, "l": args.l, "holds": r.holds,
        "witness": r.witness.to_json() if r.witness else None,
        "stats": r.stats, "timing_ms": _ms(t0)}
    if r.holds is None:
        lines = [f"({args.k},{args.l})-ut UNDECIDED: work budget {args.max_work} exhausted"]
        code = EXIT_BUDGET
    elif r.holds:
        lines = [f"({args.k},{args.l})-ut holds"]
        code = EXIT_OK
    else:
        w = r.witness
        lines = [f"({args.k},{args.l})-ut fails",
                 f"witness: orbit {w.orbit} (rep {list(w.orbit_rep)}) has no transversal of "
                 f"{w.partition.to_json()}"]
        code = EXIT_FAIL
    emit(args, report, lines)
    return code


def cmd_threshold(args) -> int:
    t0 = time.perf_counter()
    G, source = load_group(args)
    if not 1 <= args.k <= G.degree:
        raise InputError(f"need 1 <= k <= n = {G.degree}")
    r = threshold(G, args.k, method=args.method, max_work=args.max_work,
                  max_subsets=args.max_orbit, jobs=args.jobs)
    report = describe(G, source) | {
        "k": args.k, "threshold": r.value, "status": r.status, "method": r.method,
        "interval": list(r.interval) if r.interval else None,
        "probes": {str(l): v for l, v in sorted(r.probes.items())},
        "witnesses": {str(l): w.to_json() for l, w in sorted(r.witnesses.items())},
        "timing_ms": _ms(t0)}
    if r.status == "exact":
        lines = [f"t(G,{args.k}) = {r.value}  [{r.method}]"]
        code = EXIT_OK
    elif r.status == "none":
        lines = [f"G lacks the {args.k}-ut property, so t(G,{args.k}) is undefined"]
        code = EXIT_FAIL
    else:
        lines = [f"t(G,{args.k}) undecided within budget; bracket {list(r.interval)}"]
        code = EXIT_BUDGET
    emit(args, report, lines)
    return code


def cmd_bounds(args) -> int:
    t0 = time.perf_counter()
    G, source = load_group(args)
    certified = catalog.is_certified(source)
    rep = bound_report(G, args.k, certified=certified, exact=args.exact,
                       max_work=args.max_work, induction=args.induction)
    report = describe(G, source) | {
        "k": args.k,
        "bounds": {"lower": rep.lower, "upper": rep.upper, "sources": rep.sources,
                   "conditional": rep.conditional},
        "notes": rep.notes, "timing_ms": _ms(t0)}
    hi = rep.upper if rep.upper is not None else "?"
    lines = [f"{rep.lower} <= t(G,{args.k}) <= {hi}   "
             f"(lower: {rep.sources.get('lower')}, upper: {rep.sources.get('upper')})"]
    if rep.conditional:
        lines.append("upper bound is conditional: G is not in a family where it is proved")
    lines += [f"note: {s}" for s in rep.notes]
    emit(args, report, lines)
    return EXIT_OK


def cmd_regular(args) -> int:
    t0 = time.perf_counter()
    G, source = load_group(args)
    n = G.degree
    try:
        if args.map:
            maps = [PartialTransformation.parse(args.map, n)]
        elif args.pt_file:
            maps = parse_pt_lines(Path(args.pt_file).read_text().splitlines(), n)
        else:
            k, l = (int(x) for x in args.cls.split(","))
            if args.exhaustive:
                rep = equivalence_harness(G, k, l, cap=args.cap)
                report = describe(G, source) | {
                    "k": k, "l": l, "ut": rep.ut, "all_regular": rep.all_regular,
                    "checked": rep.checked, "agree": rep.agree,
                    "irregular_example": str(rep.irregular_example)
                    if rep.irregular_example else None, "timing_ms": _ms(t0)}
                verdict = "all regular" if rep.all_regular else (
                    f"non-regular example: {rep.irregular_example}")
                emit(args, report, [f"PT_{{{k},{l}}}: {rep.checked} maps checked up to symmetry; "
                                    f"{verdict}; (k,l)-ut {'holds' if rep.ut else 'fails'}"])
                return EXIT_OK if rep.all_regular else EXIT_FAIL
            maps = pt_class_representatives(G, k, l)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    results = []
    undecided = False
    for t in maps:
        v = semigroup_regular(G, t, args.cap)
        undecided |= v.regular is None
        results.append({"map": str(t), "regular": v.regular, "closure_size": v.size,
                        "irregular_element": str(v.irregular) if v.irregular else None,
                        "rank_regular": is_regular_orbit(G, t)[0]})
    report = describe(G, source) | {"results": results, "timing_ms": _ms(t0)}
    lines = []
    for r in results:
        state = {True: "regular", False: "NOT regular", None: "undecided (cap)"}[r["regular"]]
        lines.append(f"<G, {r['map']}>: {state} (closure {r['closure_size']})")
        if r["irregular_element"]:
            lines.append(f"  no inverse for {r['irregular_element']}")
    emit(args, report, lines)
    if any(r["regular"] is False for r in results):
        return EXIT_FAIL
    return EXIT_BUDGET if undecided else EXIT_OK


# -- reproduction suites -------------------------------------------------------

def _run_row(row: dict, max_work: int) -> tuple[object, str]:
    kind = row["kind"]
    if kind == "field":
        holds, _ = field_condition(row["q"])
        return holds, "PASS" if holds == row["expected"] else "FAIL"
    if kind == "reference":
        if "group" not in row:
            return None, "SKIPPED"
        # out of reach exactly; show the bounds that are computable
        G = catalog.get(row["group"])
        b = bound_report(G, row["k"], exact=False, induction=False,
                         certified=catalog.ENTRIES[row["group"]].two_graph_certified)
        return [b.lower, b.upper], "SKIPPED"
    G = catalog.get(row["group"])
    k = row["k"]
    if kind in ("threshold", "threshold-in"):
        r = threshold(G, k, max_work=max_work)
        if r.status != "exact":
            return r.interval, "SKIPPED"
        if kind == "threshold":
            return r.value, "PASS" if r.value == row["expected"] else "FAIL"
        lo, hi = row["expected"]
        return r.value, "PASS" if lo <= r.value <= hi else "FAIL"
    if kind == "two-graph":
        p = two_graph_params(G)
        got = [p.lam, p.lam_prime]
        return got, "PASS" if got == row["expected"] else "FAIL"
    if kind == "two-graph-interval":
        b = three_ut_bounds(G, catalog.ENTRIES[row["group"]].two_graph_certified)
        got = [b.lower, b.upper]
        return got, "PASS" if got == row["expected"] else "FAIL"
    raise ValueError(f"unknown row kind {kind!r}")


def run_suite(name: str, max_work: int = DEFAULT_MAX_WORK) -> list[dict]:
    out = []
    for row in catalog.expected_rows():
        if row["suite"] != name:
            continue
        t0 = time.perf_counter()
        try:
            got, status = _run_row(row, max_work)
            message = row.get("reason", "") if status == "SKIPPED" else ""
        except FileNotFoundError as exc:
            got, status, message = None, "SKIPPED", f"missing data: {exc}"
        except BudgetExceeded as exc:
            got, status, message = None, "SKIPPED", f"budget: {exc}"
        out.append({"id": row["id"], "computed": got, "expected": row["expected"],
                    "status": status, "source": row["source"], "message": message,
                    "timing_ms": _ms(t0)})
    return out


def cmd_reproduce(args) -> int:
    rows = run_suite(args.suite, args.max_work)
    lines = [f"{'row':22} {'computed':>12} {'expected':>12}  status   ms"]
    for r in rows:
        comp = "-" if r["computed"] is None else json.dumps(r["computed"])
        exp = json.dumps(r["expected"])
        if len(exp) > 12:
            exp = exp[:11] + "~"
        lines.append(f"{r['id']:22} {comp:>12} {exp:>12}  {r['status']:8} {r['timing_ms']}")
        if r["message"]:
            lines.append(f"    {r['message']}")
    emit(args, {"suite": args.suite, "rows": rows}, lines)
    return EXIT_FAIL if any(r["status"] == "FAIL" for r in rows) else EXIT_OK


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transversal",
                                description="Universal transversal properties of permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--builtin", help="e.g. cyclic:5, agl1:7, psl2:13, pgammal2:32")
        src.add_argument("--file", help="group file, or the name of a bundled one (m11_12.grp)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--max-orbit", type=int, default=DEFAULT_MAX_SUBSETS,
                        help="max number of k-subsets to enumerate (default %(default)s)")

    def search_args(sp):
        sp.add_argument("--max-work", type=int, default=DEFAULT_MAX_WORK,
                        help="max orbit-member x partition tests per probe (default %(default)s)")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads")

    sp = sub.add_parser("analyze", help="order, transitivity, primitivity, homogeneity")
    group_args(sp)
    sp.add_argument("--max-k", type=int, default=4, help="largest k for homogeneity checks")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("ut", help="decide (k,l)-ut")
    group_args(sp)
    search_args(sp)
    sp.add_argument("-k", type=int, default=None)
    sp.add_argument("-l", type=int, default=None)
    sp.add_argument("--check-witness", metavar="JSON",
                    help="re-validate a witness saved from 'ut --json' instead of searching")
    sp.set_defaults(func=cmd_ut)

    sp = sub.add_parser("threshold", help="compute t(G,k)")
    group_args(sp)
    search_args(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--method", choices=("auto", "search"), default="auto")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("bounds", help="interval for t(G,k) from all applicable bounds")
    group_args(sp)
    search_args(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--no-exact", dest="exact", action="store_false",
                    help="skip the exact search")
    sp.add_argument("--no-induction", dest="induction", action="store_false",
                    help="skip the point-stabilizer bound")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("regular", help="regularity of <G,t> for partial maps t")
    group_args(sp)
    what = sp.add_mutually_exclusive_group(required=True)
    what.add_argument("--map", help="'dom: 0 1 3 ; img: 2 2 4'")
    what.add_argument("--pt-file", help="file with one map per line")
    what.add_argument("--class", dest="cls", metavar="K,L",
                      help="every map of rank K on L points, up to symmetry")
    sp.add_argument("--exhaustive", action="store_true",
                    help="with --class: also compare against (k,l)-ut")
    sp.add_argument("--cap", type=int, default=200_000, help="closure size cap")
    sp.set_defaults(func=cmd_regular)

    sp = sub.add_parser("reproduce", help="run a suite of reference values")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-work", type=int, default=DEFAULT_MAX_WORK)
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ut" and not args.check_witness and (args.k is None or args.l is None):
        parser.error("ut needs -k and -l (or --check-witness)")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
