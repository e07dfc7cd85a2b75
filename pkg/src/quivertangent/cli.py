"""Command-line front end.

Thin adapters over the library: every subcommand parses arguments, calls
library functions and serializes the result.  Reports are deterministic for
a fixed configuration; wall-clock data is kept in a separate "timings"
field that determinism checks exclude.

Exit codes: 0 success / verified; 1 usage or I/O error; 2 verification
found a counterexample candidate or ran out of search budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .degeneration import degeneration_poset
from .dynkin import (
    DynkinQuiver,
    coxeter_number,
    default_orientation,
    dynkin_graph,
    load_quiver,
    maximal_root,
    nakayama_involution,
    parse_orientation,
    positive_roots,
)
from .mesh import ARQuiver, DirectSum
from .reps import DEFAULT_FIELD, FieldConfig, MatrixRep, decompose, realize_sum
from .tangent import (
    VerifyConfig,
    box_dim_vectors,
    orbit_tangent,
    rank_scheme_tangent,
    verify_tangent_spaces,
)

ENV_CHARACTERISTIC = "QUIVERTANGENT_CHAR"


def _field_from_args(args) -> FieldConfig:
    p = args.characteristic
    if p is None:
        p = int(os.environ.get(ENV_CHARACTERISTIC, DEFAULT_FIELD.p))
    return FieldConfig(p)


def _quiver_from_args(args) -> DynkinQuiver:
    if getattr(args, "quiver", None):
        return load_quiver(args.quiver)
    if args.type is None or args.rank is None:
        raise SystemExit("error: give either --quiver FILE or --type and --rank")
    graph = dynkin_graph(args.type, args.rank)
    if getattr(args, "orientation", None):
        return parse_orientation(graph, args.orientation)
    return default_orientation(graph)


def _dimv(window: ARQuiver, text: str) -> tuple[int, ...]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != window.graph.rank:
        raise SystemExit(f"error: expected {window.graph.rank} coordinates")
    return tuple(parts)


def _emit(data, path: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_quiver_info(args) -> int:
    quiver = _quiver_from_args(args)
    graph = quiver.graph
    info = quiver.to_json_dict()
    info.update({
        "coxeter_number": coxeter_number(graph),
        "involution": nakayama_involution(graph),
        "maximal_root": list(maximal_root(graph)),
        "positive_root_count": len(positive_roots(graph)),
    })
    _emit(info, args.out)
    return 0


def cmd_roots(args) -> int:
    quiver = _quiver_from_args(args)
    graph = quiver.graph
    _emit({
        "schema_version": 1,
        "vertices": list(graph.vertices),
        "roots": [list(r) for r in positive_roots(graph)],
    }, args.out)
    return 0


def cmd_ar_quiver(args) -> int:
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(window.to_dot())
    data = {
        "schema_version": 1,
        "quiver": quiver.to_json_dict(),
        "vertices": [
            {"p": v.p, "a": v.a,
             "dim_vector": list(window.dimension_vector_of(v))}
            for v in window.vertices()
        ],
        "meshes": [{"p": m.p, "a": m.a} for m in window.meshes()],
    }
    _emit(data, args.out)
    return 0


def cmd_orbits(args) -> int:
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    d = _dimv(window, args.dimv)
    poset = degeneration_poset(window, d)
    if args.dot:
        lines = ["digraph hasse {"]
        for i, o in enumerate(poset.orbits):
            lines.append(f'  o{i} [label="{o.summands}\\ndim {o.dimension}"];')
        for i, j in poset.hasse_edges():
            lines.append(f"  o{i} -> o{j};")
        lines.append("}")
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    data = poset.to_json_dict()
    data["dim_vector"] = list(d)
    _emit(data, args.poset if args.poset else args.out)
    return 0


def cmd_degeneration(args) -> int:
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    from .degeneration import Orbit, degenerates

    with open(args.m, encoding="utf-8") as fh:
        m = Orbit.build(window, DirectSum.from_json(json.load(fh)))
    with open(args.n, encoding="utf-8") as fh:
        n = Orbit.build(window, DirectSum.from_json(json.load(fh)))
    result = degenerates(window, m, n)
    _emit({
        "schema_version": 1,
        "degenerates": result,
        "pair_defect": window.pair_defect(m.summands, n.summands).to_json(),
    }, args.out)
    return 0


def cmd_delta(args) -> int:
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    with open(args.m, encoding="utf-8") as fh:
        m = DirectSum.from_json(json.load(fh))
    with open(args.n, encoding="utf-8") as fh:
        n = DirectSum.from_json(json.load(fh))
    _emit(window.pair_defect(m, n).to_json(), args.out)
    return 0


def cmd_rep_decompose(args) -> int:
    field = _field_from_args(args)
    with open(getattr(args, "in"), encoding="utf-8") as fh:
        rep = MatrixRep.from_json_dict(json.load(fh), field)
    window = ARQuiver(rep.quiver)
    _emit(decompose(window, rep, args.seed).to_json(), args.out)
    return 0


def cmd_tangent(args) -> int:
    field = _field_from_args(args)
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    from .degeneration import Orbit

    with open(args.m, encoding="utf-8") as fh:
        m = Orbit.build(window, DirectSum.from_json(json.load(fh)))
    if args.n_rep:
        with open(args.n_rep, encoding="utf-8") as fh:
            n = MatrixRep.from_json_dict(json.load(fh), field)
    else:
        with open(args.n, encoding="utf-8") as fh:
            n = realize_sum(window, DirectSum.from_json(json.load(fh)), field, args.seed)
    space = rank_scheme_tangent(window, m, n, args.seed)
    data = {
        "schema_version": 1,
        "dim_orbit_tangent": orbit_tangent(n).dim,
        "dim_rank_scheme_tangent": space.dim,
        "ambient_dim": space.ambient_dim,
    }
    if args.basis:
        basis = [{f"{s}>{t}": z.blocks[s, t].tolist() for s, t in quiver.arrows}
                 for z in space.basis]
        with open(args.basis, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(basis, indent=2, sort_keys=True) + "\n")
    _emit(data, args.out)
    return 0


def cmd_verify(args) -> int:
    field = _field_from_args(args)
    quiver = _quiver_from_args(args)
    window = ARQuiver(quiver)
    if args.dimv:
        dim_vectors = [_dimv(window, args.dimv)]
    else:
        dim_vectors = box_dim_vectors(window.graph.rank, args.max_coord, args.max_total)
    config = VerifyConfig(field=field, seed=args.seed,
                          descent_budget=args.descent_budget, jobs=args.jobs)
    pair = tuple(args.pair) if args.pair else None
    report = verify_tangent_spaces(window, dim_vectors, config, pair=pair)
    _emit(report, args.report if args.report else args.out)
    return 0 if report["verdict"] == "verified" else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivertangent",
        description="Mesh-category hom computations, degeneration orders and "
                    "tangent spaces of orbit closures for Dynkin quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quiver_args(p, need_type=True):
        p.add_argument("--type", choices=("A", "D", "E"), required=False)
        p.add_argument("--rank", type=int, required=False)
        p.add_argument("--orientation", help="comma-separated s>t arrow list")
        p.add_argument("--quiver", help="path to a quiver JSON file")
        p.add_argument("--out", help="write JSON here instead of stdout")

    def add_field_args(p):
        p.add_argument("--characteristic", type=int, default=None,
                       help=f"prime field characteristic (default from "
                            f"${ENV_CHARACTERISTIC} or {DEFAULT_FIELD.p})")
        p.add_argument("--seed", type=int, default=0)

    quiver = sub.add_parser("quiver", help="quiver inspection")
    qsub = quiver.add_subparsers(dest="subcommand", required=True)
    info = qsub.add_parser("info", help="graph constants and root data")
    add_quiver_args(info)
    info.set_defaults(func=cmd_quiver_info)

    roots = sub.add_parser("roots", help="positive roots of the graph")
    add_quiver_args(roots)
    roots.set_defaults(func=cmd_roots)

    arq = sub.add_parser("ar-quiver", help="the Auslander-Reiten window")
    add_quiver_args(arq)
    arq.add_argument("--dot", help="write a DOT rendering here")
    arq.set_defaults(func=cmd_ar_quiver)

    orbits = sub.add_parser("orbits", help="orbit poset for a dimension vector")
    add_quiver_args(orbits)
    orbits.add_argument("--dimv", required=True)
    orbits.add_argument("--poset", help="write the poset JSON here")
    orbits.add_argument("--dot", help="write a Hasse diagram DOT here")
    orbits.set_defaults(func=cmd_orbits)

    degen = sub.add_parser("degeneration", help="compare two orbits")
    add_quiver_args(degen)
    degen.add_argument("--m", required=True, help="multiset JSON of M")
    degen.add_argument("--n", required=True, help="multiset JSON of N")
    degen.set_defaults(func=cmd_degeneration)

    delta = sub.add_parser("delta", help="pair defect of two direct sums")
    add_quiver_args(delta)
    delta.add_argument("--m", required=True)
    delta.add_argument("--n", required=True)
    delta.set_defaults(func=cmd_delta)

    rep = sub.add_parser("rep", help="matrix representation tools")
    rsub = rep.add_subparsers(dest="subcommand", required=True)
    dec = rsub.add_parser("decompose", help="Krull-Schmidt decomposition")
    dec.add_argument("--in", required=True, dest="in")
    dec.add_argument("--out")
    add_field_args(dec)
    dec.set_defaults(func=cmd_rep_decompose)

    tang = sub.add_parser("tangent", help="tangent space of a rank scheme")
    add_quiver_args(tang)
    add_field_args(tang)
    tang.add_argument("--m", required=True, help="multiset JSON of M")
    tang.add_argument("--n", help="multiset JSON of N (canonical model)")
    tang.add_argument("--n-rep", help="explicit representation JSON of N")
    tang.add_argument("--basis", help="write the tangent basis here")
    tang.set_defaults(func=cmd_tangent)

    verify = sub.add_parser("verify-d", help="certify tangent-space equality")
    add_quiver_args(verify)
    add_field_args(verify)
    verify.add_argument("--dimv", help="verify a single dimension vector")
    verify.add_argument("--max-coord", type=int, default=2,
                        help="sweep all d with coordinates <= this")
    verify.add_argument("--max-total", type=int, default=None,
                        help="additionally bound the total dimension")
    verify.add_argument("--descent-budget", type=int, default=None,
                        help="cap on pullback search trials per block")
    verify.add_argument("--pair", type=int, nargs=2, metavar=("M", "N"),
                        help="restrict to one orbit pair by enumeration index")
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--report", help="write the report JSON here")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
