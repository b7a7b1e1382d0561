"""Command-line front end.

Exit codes: 0 success / true verdict, 1 property false, 2 usage or parse
error, 3 search budget exhausted before the search space was.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .core import NMGraphError, Params, order_bound, read_nmg, save_nmg
from .homomorphism import absolute_clique_number, chromatic_number, find_homomorphism
from .search import GraphClass, SearchConfig, Status, search_extremal, verify_corpus, verify_witness
from .seeing import sees
from .structure import audit

log = logging.getLogger("nmcliques")

OK, FALSE, USAGE, BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit_json(path: str | None, doc: dict) -> None:
    if path is None:
        return
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load(path: str):
    return read_nmg(path)


# -- commands -----------------------------------------------------------------


def cmd_bound(args) -> int:
    params = Params(args.n, args.m)
    b = order_bound(params)
    print(b)
    _emit_json(args.json, {"n": params.n, "m": params.m, "p": params.p, "bound": b})
    return OK


def cmd_verify(args) -> int:
    g = _load(args.file)
    rep = verify_witness(g, args.graph_class)
    print(f"order: {g.order}")
    print(f"class {rep.graph_class.value}: {'yes' if rep.class_ok else 'no'}")
    if rep.complete:
        print("complete: yes")
    else:
        u, v = rep.blaming_pair
        print(f"complete: no ({u} and {v} do not see each other)")
    if rep.bound is not None:
        print(f"bound: {rep.bound} ({'within' if rep.within_bound else 'exceeded'})")
    _emit_json(args.json, {"input": args.file, "report": rep.as_dict()})
    return OK if rep.passed else FALSE


def cmd_sees(args) -> int:
    g = _load(args.file)
    w = sees(g, args.u, args.v)
    print("NONE" if w is None else str(w))
    _emit_json(args.json, {
        "input": args.file,
        "u": args.u,
        "v": args.v,
        "sees": w is not None,
        "kind": None if w is None else w.kind.value,
        "middle": None if w is None else w.middle,
        "labels": None if w is None or w.labels is None else list(w.labels),
    })
    return OK if w is not None else FALSE


def cmd_hom(args) -> int:
    g, h = _load(args.gfile), _load(args.hfile)
    f = find_homomorphism(g, h)
    print("NONE" if f is None else " ".join(map(str, f.map)))
    _emit_json(args.json, {
        "source": args.gfile,
        "target": args.hfile,
        "found": f is not None,
        "map": None if f is None else list(f.map),
    })
    return OK if f is not None else FALSE


def cmd_chi(args) -> int:
    g = _load(args.file)
    chi = chromatic_number(g, args.limit)
    print(f"> {args.limit}" if chi is None else chi)
    _emit_json(args.json, {"input": args.file, "limit": args.limit, "chi": chi})
    return OK if chi is not None else FALSE


def cmd_clique(args) -> int:
    g = _load(args.file)
    size, members = absolute_clique_number(g)
    print(size)
    print(" ".join(map(str, sorted(members))))
    _emit_json(args.json, {"input": args.file, "size": size, "witness": sorted(members)})
    return OK


def cmd_search(args) -> int:
    config = SearchConfig(
        Params(args.n, args.m),
        args.graph_class,
        args.max_order,
        time_budget=args.budget,
        thread_count=args.threads,
        seed=args.seed,
    )
    out = search_extremal(config)
    save_nmg(out.witness, args.out)
    print(f"best_order: {out.best_order}")
    print(f"status: {out.status.value}")
    print(f"nodes_explored: {out.nodes_explored}")
    print(f"level_sizes: {' '.join(map(str, out.level_sizes))}")
    print(f"witness: {args.out}")
    _emit_json(args.json, {
        "n": args.n,
        "m": args.m,
        "class": config.graph_class.value,
        "max_order": args.max_order,
        "seed": args.seed,
        "threads": args.threads,
        "best_order": out.best_order,
        "status": out.status.value,
        "nodes_explored": out.nodes_explored,
        "level_sizes": out.level_sizes,
        "witness_file": str(args.out),
    })
    return OK if out.status is Status.EXHAUSTED else BUDGET


def cmd_audit(args) -> int:
    g = _load(args.file)
    rep = audit(g, args.file)
    q = rep.quantities
    print(f"input: {rep.input}")
    print(f"valid: {'yes' if rep.valid else 'no'}")
    print(f"case: {rep.case}")
    print("quantities: " + " ".join(f"{k}={'-' if v is None else v}" for k, v in q.items()))
    if rep.bound is not None:
        print(f"bound: {rep.bound}")
    applicable = [r for r in rep.inequalities if r.hypothesis_holds]
    print(f"inequalities: {len(applicable)} applicable of {len(rep.inequalities)}, "
          f"{len(rep.violations)} violated")
    for r in rep.violations:
        print(f"  VIOLATED {r.name}: {r.lhs} > {r.rhs}")
    for note in rep.notes:
        print(f"note: {note}")
    print(f"verdict: {rep.verdict}")
    _emit_json(args.json, rep.as_dict())
    return OK if rep.verdict == "consistent" else FALSE


def cmd_verify_corpus(args) -> int:
    results = verify_corpus(args.dir)
    for r in results:
        status = "ok" if r.ok else "FAIL: " + "; ".join(r.problems)
        print(f"{r.row.file}: {status}")
    ok = all(r.ok for r in results)
    print(f"{sum(r.ok for r in results)}/{len(results)} rows verified")
    _emit_json(args.json, {
        "directory": str(args.dir),
        "ok": ok,
        "rows": [
            {
                "file": r.row.file,
                "n": r.row.params.n,
                "m": r.row.params.m,
                "class": r.row.graph_class.value,
                "claimed_order": r.row.claimed_order,
                "ok": r.ok,
                "problems": r.problems,
            }
            for r in results
        ],
    })
    return OK if ok else FALSE


# -- parser -------------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seconds(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nmcliques", description="(n,m)-graph cliques on planar graphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    classes = [c.value for c in GraphClass]

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--json", metavar="PATH", help="also write JSON output ('-' for stdout)")
        return p

    p = add("bound", cmd_bound, "print the order bound 3p^2+p+1")
    p.add_argument("n", type=_nonneg)
    p.add_argument("m", type=_nonneg)

    p = add("verify", cmd_verify, "check a witness: class membership and completeness")
    p.add_argument("file")
    p.add_argument("--class", dest="graph_class", choices=classes, default="any")

    p = add("sees", cmd_sees, "does u see v?")
    p.add_argument("file")
    p.add_argument("u", type=_nonneg)
    p.add_argument("v", type=_nonneg)

    p = add("hom", cmd_hom, "find a homomorphism G -> H")
    p.add_argument("gfile")
    p.add_argument("hfile")

    p = add("chi", cmd_chi, "(n,m)-chromatic number")
    p.add_argument("file")
    p.add_argument("--limit", type=_positive)

    p = add("clique", cmd_clique, "absolute clique number and a witness set")
    p.add_argument("file")

    p = add("search", cmd_search, "largest complete graph in a class, by exhaustive growth")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--class", dest="graph_class", choices=classes, default="planar")
    p.add_argument("--max-order", type=_positive, required=True)
    p.add_argument("--budget", type=_seconds, default=60.0, help="seconds (default 60)")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="witness.nmg", help="witness file (default witness.nmg)")

    p = add("audit", cmd_audit, "structural audit of a planar complete graph")
    p.add_argument("file")

    p = add("verify-corpus", cmd_verify_corpus, "check every row of a corpus manifest")
    p.add_argument("dir")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (NMGraphError, OSError) as exc:
        print(f"nmcliques {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
