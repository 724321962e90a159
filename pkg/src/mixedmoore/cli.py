"""Command-line front end.

Exit status: 0 success, 1 check failed (or search empty with --expect-some),
2 usage or parse error, 3 node budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, canon, certify, constructions, search
from .core import GraphError, MixedGraph
from .fileformat import read_graph, serialize_graph, to_dot

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _graph_payload(g: MixedGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()], "arcs": [list(a) for a in g.sorted_arcs()]}


def cmd_bound(args) -> int:
    m, levels = bounds.moore_bound(args.r, args.z, args.k)
    terms = bounds.moore_bound_terms(args.r, args.z, args.k)
    payload = {
        "r": args.r,
        "z": args.z,
        "k": args.k,
        "moore_bound": m,
        "levels": list(levels.sizes),
        "closed_form_agrees": terms.agrees,
        "closed_form_skipped": terms.skipped,
        "proper_mixed": bounds.is_proper_parameters(args.r, args.z),
    }
    text = str(m)
    if args.levels:
        text += "\n" + "\n".join(
            f"level {i}: {a + b} (edge {a}, arc {b})"
            for i, (a, b) in enumerate(zip(levels.edge_ended, levels.arc_ended))
        )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_feasible_11k(args) -> int:
    order, ok = bounds.order_11k(args.k)
    _emit(
        args,
        {"k": args.k, "order": order, "parity_feasible": ok},
        f"order {order}: {'feasible' if ok else 'infeasible (odd order)'}",
    )
    return EXIT_OK


def cmd_spectral(args) -> int:
    hi = args.max if args.max is not None else args.z
    rows = [bounds.spectral_infeasibility_defect1(z) for z in range(args.z, hi + 1)]
    payload = {
        "results": [
            {"z": v.z, "n": v.n, "sums": [str(s) for s in v.eigenvalue_sums], "infeasible": v.infeasible}
            for v in rows
        ]
    }
    text = "\n".join(
        f"z={v.z} n={v.n} sums={{{', '.join(str(s) for s in v.eigenvalue_sums)}}} "
        + ("infeasible" if v.infeasible else "FEASIBLE")
        for v in rows
    )
    _emit(args, payload, text)
    return EXIT_OK if all(v.infeasible for v in rows) else EXIT_FAIL


def cmd_check(args) -> int:
    g = read_graph(args.file)
    try:
        rep = certify.check_graph(g, args.r, args.z, args.k, args.mode)
    except certify.DegreeViolation as exc:
        _emit(args, {"error": str(exc), "vertices": exc.vertices}, f"degree check failed: {exc}")
        return EXIT_FAIL
    text = rep.to_text()
    if not args.audit:
        text = "".join(line + "\n" for line in text.splitlines() if not line.startswith("audit "))
    _emit(args, rep.to_dict(), text)
    if not rep.in_family:
        return EXIT_FAIL
    if args.audit and any(a.outcome == certify.FAIL for a in rep.audits):
        return EXIT_FAIL
    return EXIT_OK


def cmd_tree(args) -> int:
    g = read_graph(args.file)
    t = certify.moore_tree(g, args.root, args.k)
    if args.format == "dot":
        sys.stdout.write(certify.tree_to_dot(t))
        return EXIT_OK
    payload = {
        "root": t.root,
        "k": t.k,
        "entries": [
            {"label": f"u{i}", "vertex": e.vertex, "level": e.level, "parent": e.parent, "step": e.step}
            for i, e in enumerate(t.entries)
        ],
        "duplicates": {str(v): c for v, c in t.duplicates.items()},
        "missing": sorted(t.missing),
    }
    lines = [
        f"u{i} v{e.vertex} level={e.level} parent={'-' if e.parent < 0 else f'u{e.parent}'} step={e.step or '-'}"
        for i, e in enumerate(t.entries)
    ]
    lines.append("duplicates: " + (" ".join(f"{v}x{c}" for v, c in t.duplicates.items()) or "-"))
    lines.append("missing: " + (" ".join(map(str, sorted(t.missing))) or "-"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_search(args) -> int:
    spec = search.SearchSpec(
        r=args.r,
        z=args.z,
        k=args.k,
        mode=args.mode,
        slack=args.slack,
        assume_total_regular=args.assume_total_regular,
        enumerate_all=args.all,
        jobs=args.jobs,
        budget=args.budget if args.budget is not None else search.default_budget(),
        arc_distance_prune=args.arc_distance_prune,
        girth_prune=not args.no_girth_prune,
    )
    try:
        res = search.search_extremal(spec)
    except search.BudgetExceeded as exc:
        _emit(args, {"error": str(exc), "nodes": exc.nodes, "budget": exc.budget}, str(exc))
        return EXIT_BUDGET
    summary = res.to_dict()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(res.graphs):
            (out / f"graph_{i:03d}.mg").write_text(serialize_graph(g), encoding="utf-8")
        (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    text = (
        f"target order {summary['target_order']}: found {summary['found']} graph(s)\n"
        f"undirected classes {summary['undirected_classes']} (girth >= {summary['girth_floor']})\n"
        f"nodes {summary['nodes']}, prunes "
        + ", ".join(f"{k}={v}" for k, v in summary["prunes"].items())
        + f"\nwall time {summary['wall_time']} s"
    )
    if args.out:
        text += f"\nwrote {len(res.graphs)} graph file(s) to {args.out}"
    _emit(args, summary, text)
    if args.expect_some and not res.graphs:
        return EXIT_FAIL
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.name == "fig1":
        g = constructions.almost_moore_10()
    elif args.name == "fig6":
        g = constructions.excess_one_12()
    elif args.name == "dihedral":
        if args.m is None:
            raise UsageError("dihedral needs --m")
        g = constructions.dihedral_cayley(args.m, _words(args.arc_gens), _words(args.edge_gens))
    else:
        if args.z is None:
            raise UsageError("kautz needs --z")
        g = constructions.kautz_collapse(args.z)
    _emit(args, _graph_payload(g), serialize_graph(g))
    return EXIT_OK


def _words(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [w for w in raw.replace(",", " ").split() if w]


def cmd_canon(args) -> int:
    g = read_graph(args.file)
    cf = canon.canonical_form(g, with_aut_order=True)
    payload = {"code": cf.hex(), "aut_order": cf.aut_order, "graph": _graph_payload(cf.canonical_graph(g))}
    _emit(args, payload, f"code: {cf.hex()}\naut_order: {cf.aut_order}\n" + serialize_graph(cf.canonical_graph(g)))
    return EXIT_OK


def cmd_iso(args) -> int:
    same = canon.are_isomorphic(read_graph(args.file1), read_graph(args.file2))
    _emit(args, {"isomorphic": same}, "isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_FAIL


def cmd_export(args) -> int:
    g = read_graph(args.file)
    sys.stdout.write(to_dot(g) if args.format == "dot" else serialize_graph(g))
    return EXIT_OK


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")

    p = argparse.ArgumentParser(prog="mixedmoore", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def rzk(sp, k=True):
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--z", type=int, required=True)
        if k:
            sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("bound", parents=[common], help="mixed Moore bound M(r,z,k)")
    rzk(sp)
    sp.add_argument("--levels", action="store_true")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("feasible-11k", parents=[common], help="order/parity of (1,1,k;-1)-graphs")
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_feasible_11k)

    sp = sub.add_parser("spectral", parents=[common], help="trace test for non-regular (2,z,2;-1)-graphs")
    sp.add_argument("--z", type=int, required=True)
    sp.add_argument("--max", type=int)
    sp.set_defaults(func=cmd_spectral)

    sp = sub.add_parser("check", parents=[common], help="certify a graph file")
    sp.add_argument("file")
    rzk(sp)
    sp.add_argument("--mode", choices=[certify.DEFECT, certify.EXCESS], required=True)
    sp.add_argument("--audit", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("tree", parents=[common], help="Moore tree of a vertex")
    sp.add_argument("file")
    sp.add_argument("--root", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--format", choices=["text", "dot"], default="text")
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("search", parents=[common], help="exhaustive search")
    rzk(sp)
    sp.add_argument("--mode", choices=[certify.DEFECT, certify.EXCESS], required=True)
    sp.add_argument("--slack", type=int, required=True)
    sp.add_argument("--assume-total-regular", action="store_true")
    sp.add_argument("--all", action="store_true", help="find all classes instead of stopping at the first")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    sp.add_argument("--expect-some", action="store_true")
    sp.add_argument("--arc-distance-prune", action="store_true", help="(2,1,2;+1) only: arcs span undirected distance >= 4")
    sp.add_argument("--no-girth-prune", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("construct", parents=[common], help="emit a named or generated graph")
    sp.add_argument("name", choices=["fig1", "fig6", "dihedral", "kautz"])
    sp.add_argument("--m", type=int)
    sp.add_argument("--arc-gens")
    sp.add_argument("--edge-gens")
    sp.add_argument("--z", type=int)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("canon", parents=[common], help="canonical form")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("iso", parents=[common], help="isomorphism test")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("export", parents=[common], help="re-emit a graph file")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["dot", "v1"], required=True)
    sp.set_defaults(func=cmd_export)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphError, search.InfeasibleSpec, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
