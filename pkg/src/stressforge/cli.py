"""Command line interface; every command prints one JSON report on stdout.

Exit status: 0 on success, 1 on a domain error (with a JSON error report),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .core import Configuration, Graph, StressForgeError, make_framework
from .geometry import CONDITION_ARITY, ConditionId, evaluate_condition, sample_off_condition, sample_on_condition
from .io import dumps_report, edge_text, export_svg, parse_edge, parse_model, rational_text
from .signature import fiber_signature
from .stress import self_stress_space
from .witness import DEFAULT_SEED, witness_subgraph_search


class UsageError(Exception):
    pass


def _points_text(points) -> list[list[str]]:
    return [[rational_text(x) for x in p] for p in points]


def _signature_doc(sig) -> dict:
    return {
        "edges": [edge_text(e) for e in sig.edges],
        "dimension": sig.dimension,
        "covectors": sig.sorted_covectors(),
        "zero_edges": sorted(edge_text(e) for e in sig.zero_edges),
    }


def cmd_stress(args) -> dict:
    model = parse_model(args.model)
    space = self_stress_space(model.framework)
    basis = []
    for w in space.basis:
        basis.append({
            "weights": {edge_text(e): rational_text(x) for e, x in w.as_dict().items()},
            "labels": {edge_text(e): lab for e, lab in w.labels().items()},
        })
    return {"dimension": space.dimension, "basis": basis}


def cmd_signature(args) -> dict:
    return _signature_doc(fiber_signature(parse_model(args.model).framework))


def cmd_classify(args) -> dict:
    from .census.lambda4 import classify_k4, collinear_tag, lambda4_arrangement

    f = parse_model(args.model).framework
    if f.d != 2:
        raise StressForgeError("classify-k4 needs a planar model")
    cid = classify_k4(f.configuration)
    cell = lambda4_arrangement().cells[cid]
    out = {"cell": cid, "kind": "face" if cell.dim == 2 else "arc", "signature": _signature_doc(fiber_signature(
        make_framework(Graph.complete(4), f.configuration)))}
    tag = collinear_tag(cid)
    if tag:
        out["condition"] = tag
    return out


def cmd_census(args) -> dict:
    from .census.lambda4 import arc_groups, lambda4_arrangement
    from .census.lambda5 import lambda5_census
    from .census.tables import strata_table

    if args.lambda4:
        cx = lambda4_arrangement()
        return {
            "faces": len(cx.of_dim(2)),
            "arcs": len(cx.of_dim(1)),
            "vertices": len(cx.of_dim(0)),
            "euler_characteristic": cx.euler_characteristic(),
            "arc_groups": {g: len(v) for g, v in arc_groups(cx).items()},
            "cells": [c.id for c in cx.of_dim(2) + cx.of_dim(1)],
        }
    if args.lambda5:
        c = lambda5_census()
        return {
            "top_count": c.top_count,
            "codim1_count": c.codim1_count,
            "fiber_region_counts": sorted(set(c.fiber_region_counts.values())),
            "merges": len(c.merges),
        }
    if args.n is None:
        raise UsageError("census needs --n, --lambda4 or --lambda5")
    return strata_table(args.n).as_dict()


def _bindings(text: str | None, roles: dict, tag: str) -> ConditionId:
    if text:
        try:
            labels = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise UsageError(f"--bind takes comma-separated labels, got {text!r}") from None
        return ConditionId(tag, labels)
    return ConditionId.from_roles(tag, roles)


def cmd_condition(args) -> dict:
    model = parse_model(args.model)
    cid = _bindings(args.bind, model.roles, args.id)
    if model.framework.d != 2:
        raise StressForgeError("conditions are planar")
    verdict, built = evaluate_condition(cid, model.framework.configuration.points)
    return {
        "condition": cid.tag,
        "bindings": list(cid.bindings),
        "statement": cid.describe(),
        "holds": verdict,
        "constructed": {k: str(p) for k, p in sorted(built.items())},
    }


def _load_samples(folder: Path, n: int) -> list[Configuration]:
    if not folder.is_dir():
        raise StressForgeError(f"sample folder {folder} does not exist")
    out = []
    for path in sorted(folder.glob("*.json")):
        conf = parse_model(path).framework.configuration
        if conf.n != n:
            raise StressForgeError(f"{path} has {conf.n} points, expected {n}")
        out.append(conf)
    return out


def cmd_witness(args) -> dict:
    target = ConditionId(args.condition)
    provenance = {"seed": args.seed}
    if args.samples:
        root = Path(args.samples)
        on = _load_samples(root / "on", args.n)
        off = _load_samples(root / "off", args.n)
        provenance["samples"] = str(root)
    else:
        rng = random.Random(args.seed)
        on = [sample_on_condition(target.tag, args.n, rng) for _ in range(args.count)]
        off = [sample_off_condition(target.tag, args.n, rng) for _ in range(args.count)]
        provenance["generated_samples"] = args.count
    seeds = [parse_edge(e) for e in args.seed_edges.split(",")] if args.seed_edges else []
    found = witness_subgraph_search(
        args.n, target, on, off, seed_edges=seeds, max_edges=args.max_edges, rng_seed=args.seed
    )
    return {
        "condition": target.tag,
        "n": args.n,
        "witnesses": [[edge_text(e) for e in g.edges] for g in found],
        "provenance": provenance,
    }


def _edges_arg(text: str) -> list[tuple[int, int]]:
    return [parse_edge(e) for e in text.split(",") if e]


def cmd_surgery(args) -> dict:
    from . import surgery as S

    kind = args.kind
    if kind == "edge-exchange":
        model = parse_model(args.models[0])
        f = model.framework
        H = Graph(f.n, _edges_arg(args.subgraph)) if args.subgraph else f.graph
        v = S.edge_exchange_check(f.graph, H, parse_edge(args.e1), parse_edge(args.e2), f.configuration)
        return {"surgery": kind, "verdict": v.as_dict()}
    if kind == "two-sum":
        if len(args.models) != 2:
            raise UsageError("two-sum needs two model files")
        f1, f2 = (parse_model(m).framework for m in args.models)
        g, v = S.two_sum(f1, parse_edge(args.edge1), f2, parse_edge(args.edge2))
        return {"surgery": kind, "verdict": v.as_dict(), "result": _framework_doc(g)}
    if kind == "surgery1":
        model = parse_model(args.models[0])
        g, v = S.surgery1_apply(model.framework, S.SurgerySite(model.roles))
        return {"surgery": kind, "verdict": v.as_dict(), "result": _framework_doc(g)}
    if kind == "surgery2":
        if len(args.models) != 2:
            raise UsageError("surgery2 needs the before and after model files")
        m1, m2 = (parse_model(m) for m in args.models)
        v = S.surgery2_verify(m1.framework, m2.framework, S.SurgerySite(m1.roles))
        return {"surgery": kind, "verdict": v.as_dict()}
    if kind == "surgery3d":
        model = parse_model(args.models[0])
        if not args.pairs:
            raise UsageError("surgery3d needs --pairs 'a-b,c-d;e-f,g-h;i-j,k-l'")
        pairs = [tuple(_edges_arg(p)) for p in args.pairs.split(";")]
        g, v = S.surgery3d_verify(model.framework, S.SurgerySite(model.roles), pairs)
        return {"surgery": kind, "verdict": v.as_dict(), "result": _framework_doc(g)}
    raise UsageError(f"unknown surgery {kind!r}")


def _framework_doc(f) -> dict:
    return {
        "dimension": f.d,
        "vertices": _points_text(f.configuration.points),
        "edges": [list(e) for e in f.edges],
    }


def cmd_export(args) -> dict:
    from .census.lambda4 import lambda4_arrangement

    meta = export_svg(lambda4_arrangement(), args.svg)
    return {"svg": args.svg, **meta}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stressforge", description="Exact tensegrity stress spaces and strata.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stress", help="stress space of a model")
    s.add_argument("model")
    s.set_defaults(func=cmd_stress)

    s = sub.add_parser("signature", help="fiber signature (covector set) of a model")
    s.add_argument("model")
    s.set_defaults(func=cmd_signature)

    s = sub.add_parser("classify-k4", help="stratum of a four-point configuration")
    s.add_argument("model")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("census", help="strata counts")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, choices=(2, 3, 4, 5))
    g.add_argument("--lambda4", action="store_true")
    g.add_argument("--lambda5", action="store_true")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("condition", help="evaluate a catalog condition")
    s.add_argument("--id", required=True, choices=sorted(CONDITION_ARITY))
    s.add_argument("--bind", help="comma-separated vertex labels for v1, v2, ...")
    s.add_argument("model")
    s.set_defaults(func=cmd_condition)

    s = sub.add_parser("witness-search", help="subgraphs identifying a condition")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--condition", required=True, choices=sorted(CONDITION_ARITY))
    s.add_argument("--samples", help="folder with on/ and off/ model files")
    s.add_argument("--count", type=int, default=5, help="samples per side when generating")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--seed-edges", help="edges every witness must contain, e.g. 1-2,3-4")
    s.add_argument("--max-edges", type=int)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("surgery", help="apply or verify a surgery")
    s.add_argument("kind", choices=("edge-exchange", "two-sum", "surgery1", "surgery2", "surgery3d"))
    s.add_argument("models", nargs="+")
    s.add_argument("--subgraph", help="edges of H for edge-exchange (default: all of G)")
    s.add_argument("--e1")
    s.add_argument("--e2")
    s.add_argument("--edge1")
    s.add_argument("--edge2")
    s.add_argument("--pairs")
    s.set_defaults(func=cmd_surgery)

    s = sub.add_parser("export", help="draw the four-point sphere")
    s.add_argument("--svg", required=True)
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "surgery":
        need = {"edge-exchange": ("e1", "e2"), "two-sum": ("edge1", "edge2")}.get(args.kind, ())
        missing = [f"--{n}" for n in need if getattr(args, n) is None]
        if missing:
            parser.error(f"surgery {args.kind} needs {' '.join(missing)}")
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stressforge: error: {exc}", file=sys.stderr)
        return 2
    except (StressForgeError, ValueError, ZeroDivisionError) as exc:
        report = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(dumps_report(report))
        return 1
    report = {"command": args.command, "result": result}
    sys.stdout.write(dumps_report(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
