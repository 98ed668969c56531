"""Command-line interface.

Exit codes: 0 success / property holds, 1 property is false, 2 input
error, 3 a three-valued verdict came back unknown.  The environment
variable KPX_BUDGET overrides the default search bound for analyze.
"""

import argparse
import json
import os
import sys

from . import algebra, analysis, boundary, degrees, elements, groupoid, io
from .errors import KpxError
from .kgraph import omega_graph
from .rings import QQ, parse_ring

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3


def _parse_degree(text, k=None):
    try:
        deg = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise KpxError(f"bad degree literal {text!r}") from None
    if k is not None and len(deg) != k:
        raise KpxError(f"degree {text!r} has wrong rank (expected {k})")
    return deg


def _load(args):
    if args.omega:
        return omega_graph(_parse_degree(args.omega))
    if args.graph:
        return io.load_graph(args.graph)
    raise KpxError("no graph given: use --graph FILE or --omega M")


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _span_terms(a):
    return [
        {"lam": lam.label(), "mu": mu.label(), "coeff": str(c)}
        for (lam, mu), c in a.items()
    ]


def _span_text(a):
    if a.is_structurally_zero():
        return "0"
    return " + ".join(f"{c}*s({l.label()})*g({m.label()})" for (l, m), c in a.items())


def cmd_validate(args):
    g = _load(args)
    payload = {
        "ok": True,
        "k": g.k,
        "vertices": len(g.vertices),
        "edges": len(g.edge_ids()),
        "squares": len(g.squares),
    }
    _emit(args, payload, [
        f"ok: rank {g.k}, {len(g.vertices)} vertices, "
        f"{len(g.edge_ids())} edges, {len(g.squares)} squares"
    ])
    return EXIT_OK


def cmd_info(args):
    g = _load(args)
    preds = g.predicates()
    payload = {
        "k": g.k,
        "vertices": list(g.vertices),
        "edges": g.edge_ids(),
        "predicates": preds,
    }
    lines = [f"rank: {g.k}",
             f"vertices: {' '.join(sorted(g.vertices))}",
             f"edges: {' '.join(g.edge_ids())}"]
    lines += [f"{name}: {value}" for name, value in sorted(preds.items())]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_paths(args):
    g = _load(args)
    deg = _parse_degree(args.degree, g.k)
    if args.leq:
        out = g.paths_leq(args.from_vertex, deg)
    else:
        out = g.paths_from(args.from_vertex, deg)
    labels = [p.label() for p in out]
    _emit(args, {"paths": labels}, labels)
    return EXIT_OK


def cmd_mce(args):
    g = _load(args)
    lam = g.parse_path(args.path1)
    mu = g.parse_path(args.path2)
    pairs = sorted(
        g.minimal_common_extensions(lam, mu),
        key=lambda rt: (rt[0].sort_key(), rt[1].sort_key()),
    )
    exts = [p.label() for p in g.mce(lam, mu)]
    payload = {
        "mce": exts,
        "pairs": [{"rho": r.label(), "tau": t.label()} for r, t in pairs],
    }
    lines = [f"mce: {' '.join(exts) if exts else '(none)'}"]
    lines += [f"pair: rho={r.label()} tau={t.label()}" for r, t in pairs]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_exhaustive(args):
    g = _load(args)
    E = [g.parse_path(p) for p in args.paths]
    witness = g.exhaustiveness_witness(args.vertex, E)
    ok = witness is None
    payload = {"exhaustive": ok}
    lines = [f"exhaustive: {str(ok).lower()}"]
    if not ok:
        payload["witness"] = witness.label()
        lines.append(f"witness: {witness.label()}")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_boundary(args):
    g = _load(args)
    if args.orbits:
        orbs = boundary.orbits(g)
        payload = {"orbits": [[x.label() for x in orb] for orb in orbs]}
        lines = [" ".join(x.label() for x in orb) for orb in orbs]
    else:
        paths = boundary.enumerate_boundary(g)
        payload = {"boundary": [x.label() for x in paths]}
        lines = [x.label() for x in paths]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_eval(args):
    g = _load(args)
    ring = parse_ring(args.ring)
    a = elements.parse_element(g, ring, args.expr)
    payload = {"ring": ring.name, "terms": _span_terms(a)}
    lines = [_span_text(a)]
    if args.grade:
        parts = algebra.grade(a)
        payload["grades"] = {
            ",".join(map(str, key)): _span_terms(part)
            for key, part in sorted(parts.items())
        }
        for key, part in sorted(parts.items()):
            lines.append(f"degree {','.join(map(str, key))}: {_span_text(part)}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_zero(args):
    g = _load(args)
    ring = parse_ring(args.ring)
    a = elements.parse_element(g, ring, args.expr)
    ok = algebra.is_zero(a)
    _emit(args, {"zero": ok}, [f"zero: {str(ok).lower()}"])
    return EXIT_OK if ok else EXIT_FALSE


def cmd_equal(args):
    g = _load(args)
    ring = parse_ring(args.ring)
    a = elements.parse_element(g, ring, args.expr1)
    b = elements.parse_element(g, ring, args.expr2)
    ok = algebra.equals(a, b)
    _emit(args, {"equal": ok}, [f"equal: {str(ok).lower()}"])
    return EXIT_OK if ok else EXIT_FALSE


def cmd_refine(args):
    g = _load(args)
    cells = [elements.parse_cell(g, text) for text in args.cells]
    refined = groupoid.disjointify([c for c in cells if c is not None])
    labels = [c.label() for c in refined]
    _emit(args, {"cells": labels}, labels if labels else ["(empty)"])
    return EXIT_OK


def cmd_analyze(args):
    g = _load(args)
    ring = parse_ring(args.ring)
    rep = analysis.report(g, ring=ring, bound=args.bound)
    payload = {
        "predicates": rep.predicates,
        "aperiodicity": rep.aperiodicity.status,
        "cofinality": rep.cofinality.status,
        "ring": ring.name,
        "ring_is_field": rep.ring_is_field,
        "basically_simple": rep.basically_simple,
        "simple": rep.simple,
    }
    lines = [f"{k}: {v}" for k, v in sorted(rep.predicates.items())]
    lines.append(f"aperiodic: {rep.aperiodicity.status}")
    if rep.aperiodicity.status == "periodic":
        mu, nu, alpha = rep.aperiodicity.witness
        payload["periodicity"] = {
            "vertex": rep.aperiodicity.vertex,
            "m": list(rep.aperiodicity.m),
            "n": list(rep.aperiodicity.n),
            "mu": mu.label(),
            "nu": nu.label(),
            "alpha": alpha.label(),
        }
        lines.append(
            f"periodicity: vertex={rep.aperiodicity.vertex} "
            f"m={rep.aperiodicity.m} n={rep.aperiodicity.n} "
            f"mu={mu.label()} nu={nu.label()} alpha={alpha.label()}"
        )
    lines.append(f"cofinal: {rep.cofinality.status}")
    if rep.cofinality.status == "not_cofinal":
        payload["cofinality_witness"] = {
            "vertex": rep.cofinality.vertex,
            "path": rep.cofinality.path.label(),
        }
        lines.append(
            f"cofinality witness: vertex={rep.cofinality.vertex} "
            f"path={rep.cofinality.path.label()}"
        )
    lines.append(f"ring: {ring.name} (field: {rep.ring_is_field})")
    lines.append(f"basically simple: {rep.basically_simple}")
    lines.append(f"simple: {rep.simple}")
    if rep.dimension is not None:
        payload["dimension"] = rep.dimension
        lines.append(f"dimension: {rep.dimension}")
    _emit(args, payload, lines)
    return EXIT_UNKNOWN if rep.basically_simple == "unknown" else EXIT_OK


def cmd_dim(args):
    g = _load(args)
    ring = parse_ring(args.ring)
    dim = groupoid.dim_over_field(g, ring)
    _emit(args, {"dimension": dim}, [str(dim)])
    return EXIT_OK


def build_parser():
    # the shared flags suppress their defaults so a subcommand occurrence
    # does not clobber a value given before the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--graph", help="graph specification file (JSON)")
    common.add_argument(
        "--omega",
        metavar="M",
        help="use the built-in lattice-segment graph with top degree M, "
        "e.g. --omega 3 or --omega 1,1",
    )
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument(
        "--ring", help="coefficient ring: z, q, or zmod:N (default q)"
    )
    parser = argparse.ArgumentParser(
        prog="kpx",
        description="Exact computations in Kumjian-Pask algebras of finite "
        "higher-rank graphs.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("validate", help="validate the graph file")
    add("info", help="summary and structural predicates")

    p = add("paths", help="enumerate paths from a vertex")
    p.add_argument("--from", dest="from_vertex", required=True)
    p.add_argument("--degree", required=True)
    p.add_argument(
        "--leq", action="store_true",
        help="relative boundary: degree <= bound, maximal in deficient colors",
    )

    p = add("mce", help="minimal common extensions of two paths")
    p.add_argument("path1")
    p.add_argument("path2")

    p = add("exhaustive", help="test a set of paths for exhaustivity")
    p.add_argument("--vertex", required=True)
    p.add_argument("paths", nargs="*")

    p = add("boundary", help="enumerate boundary paths (acyclic)")
    p.add_argument("--orbits", action="store_true")

    p = add("eval", help="reduce an element expression to span form")
    p.add_argument("expr")
    p.add_argument("--grade", action="store_true")

    p = add("zero", help="exact zero test for an element")
    p.add_argument("expr")

    p = add("equal", help="exact equality of two elements")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = add("refine", help="disjointify a list of groupoid cells")
    p.add_argument("cells", nargs="+")

    p = add("analyze", help="aperiodicity / cofinality / simplicity")
    p.add_argument(
        "--bound",
        type=int,
        default=int(os.environ.get("KPX_BUDGET", "3")),
        help="search bound for cyclic graphs (default KPX_BUDGET or 3)",
    )

    add("dim", help="dimension over a field (acyclic graphs)")
    return parser


_HANDLERS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "paths": cmd_paths,
    "mce": cmd_mce,
    "exhaustive": cmd_exhaustive,
    "boundary": cmd_boundary,
    "eval": cmd_eval,
    "zero": cmd_zero,
    "equal": cmd_equal,
    "refine": cmd_refine,
    "analyze": cmd_analyze,
    "dim": cmd_dim,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, val in (("graph", None), ("omega", None), ("json", False), ("ring", "q")):
        if not hasattr(args, key):
            setattr(args, key, val)
    try:
        return _HANDLERS[args.command](args)
    except KpxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
