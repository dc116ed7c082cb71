"""Command-line surface.

Subcommands: gen, partition, tdlg, separate, iso, verify, oracle, bench.
All outputs are canonical JSON on stdout (``gen`` emits graph text) so that
identical inputs and seeds produce byte-identical output; wall-clock timings
are only included when --timings is passed.

Exit codes: 0 success, 1 validation failure or incident, 2 usage error,
3 a K_t-model certificate was returned (input was not K_t-minor-free).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from fractions import Fraction

from . import generators, oracles
from .errors import FormatError, IncidentError, OracleLimitError, ParameterError
from .formats import (emit_decomposition, emit_graph, format_fraction,
                      graph_digest, parse_decomposition, parse_graph,
                      parse_weights)
from .graphs import Graph, components, line_graph, validate_model
from .partition import (KtCertificate, Params, partition_line_graph,
                        validate_certificate, validate_embedding,
                        validate_partition)
from .separator import (balanced_edge_separator, isoperimetric_witness,
                        separator_from_partition, uniform_weights)
from .treedecomp import TreeDecomposition, product_blowup, validate_decomposition, width

SCHEMA = "edgesep-report/1"
BOUND_FORMULA = "(t-1)*floor(sqrt((t-3)*m*Delta) + Delta)"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, FormatError, OracleLimitError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IncidentError as exc:
        print(f"incident: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgesep")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance as PACE-style text")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("params", nargs="+", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)

    for name, fn, extra in (
        ("partition", _cmd_partition, ("--td-out",)),
        ("tdlg", _cmd_tdlg, ("--td-out",)),
        ("iso", _cmd_iso, ()),
    ):
        c = sub.add_parser(name)
        c.add_argument("graph", nargs="?", help="graph file; stdin when omitted")
        c.add_argument("--t", type=int, required=True)
        c.add_argument("--out")
        c.add_argument("--timings", action="store_true")
        for flag in extra:
            c.add_argument(flag)
        c.set_defaults(func=fn)

    s = sub.add_parser("separate")
    s.add_argument("graph", nargs="?")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--weights", help="weights file '<vertex> <num>/<den>'")
    s.add_argument("--uniform", action="store_true")
    s.add_argument("--out")
    s.add_argument("--timings", action="store_true")
    s.set_defaults(func=_cmd_separate)

    v = sub.add_parser("verify")
    v.add_argument("kind", choices=("partition", "td", "separator", "model"))
    v.add_argument("artifact", nargs="?", help="artifact file; stdin when omitted")
    v.add_argument("--against", required=True, help="graph file the artifact refers to")
    v.add_argument("--line", action="store_true",
                   help="for td: decomposition is over the line graph")
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    o = sub.add_parser("oracle")
    o.add_argument("which", choices=("tw", "sep", "iso", "minor"))
    o.add_argument("graph", nargs="?")
    o.add_argument("--t", type=int)
    o.add_argument("--weights")
    o.add_argument("--out")
    o.set_defaults(func=_cmd_oracle)

    b = sub.add_parser("bench")
    b.add_argument("--family", required=True, choices=generators.FAMILIES)
    b.add_argument("--sizes", required=True, help="comma-separated sizes")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=_cmd_bench)
    return p


# ------------------------------------------------------------------ helpers

def _read_graph(args) -> Graph:
    if getattr(args, "graph", None):
        with open(args.graph) as fh:
            return parse_graph(fh.read())
    return parse_graph(sys.stdin.read())


def _read_text(path_or_none) -> str:
    if path_or_none:
        with open(path_or_none) as fh:
            return fh.read()
    return sys.stdin.read()


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _decomp_json(d: TreeDecomposition) -> dict:
    return {
        "bags": [list(b) for b in d.bags],
        "tree_edges": [list(e) for e in d.tree_edges],
        "designated": d.designated,
        "root_clique": list(d.root_clique) if d.root_clique is not None else None,
    }


def _params_json(g: Graph, params: Params) -> dict:
    return {
        "t": params.t,
        "n": g.n,
        "m": params.m,
        "delta": params.delta,
        "c_sep": params.c_sep,
        "p_impl": params.p_value(),
        "p_floor": params.p_floor(),
        "reference_p_floor": params.reference_p_floor(),
        "bound_formula": BOUND_FORMULA,
    }


def _certificate_report(g: Graph, cert: KtCertificate) -> dict:
    ok, why = validate_certificate(g, cert)
    return {
        "schema": SCHEMA,
        "kind": "certificate",
        "input_digest": graph_digest(g),
        "t": cert.t,
        "branch_sets": [list(s) for s in cert.branch_sets],
        "validators": {"model": ok, "violation": why},
    }


def _maybe_timings(report: dict, args, started: float) -> dict:
    if getattr(args, "timings", False):
        report["timings"] = {"wall_s": time.perf_counter() - started}
    return report


# ------------------------------------------------------------------ commands

def _cmd_gen(args) -> int:
    g = generators.generate(args.family, args.params, args.seed)
    _emit(args, emit_graph(g))
    return 0


def _cmd_partition(args) -> int:
    g = _read_graph(args)
    started = time.perf_counter()
    res = partition_line_graph(g, args.t)
    if isinstance(res, KtCertificate):
        _emit(args, _json(_certificate_report(g, res)))
        return 3
    part = res.partition
    ok_p, why_p = validate_partition(g, part, res.params)
    ok_e, why_e = validate_embedding(g, part, res.embedding, res.params)
    if args.td_out:
        with open(args.td_out, "w") as fh:
            fh.write(emit_decomposition(part.decomp, len(part.parts)))
    report = {
        "schema": SCHEMA,
        "kind": "partition",
        "input_digest": graph_digest(g),
        "params": _params_json(g, res.params),
        "parts": [list(p) for p in part.parts],
        "h_edges": [list(e) for e in part.h_edges],
        "root_clique": list(part.root),
        "decomposition": _decomp_json(part.decomp),
        "embedding": [list(entry) for entry in res.embedding],
        "bounds": {
            "h_width": width(part.decomp),
            "h_width_bound": args.t - 2,
            "max_part_size": max((len(p) for p in part.parts), default=0),
        },
        "validators": {"partition": ok_p, "embedding": ok_e,
                       "violation": why_p or why_e},
    }
    _emit(args, _json(_maybe_timings(report, args, started)))
    return 0 if ok_p and ok_e else 1


def _cmd_tdlg(args) -> int:
    g = _read_graph(args)
    started = time.perf_counter()
    res = partition_line_graph(g, args.t)
    if isinstance(res, KtCertificate):
        _emit(args, _json(_certificate_report(g, res)))
        return 3
    blowup = product_blowup(res.partition.decomp, res.partition.parts)
    lg, _ = line_graph(g)
    ok, why = validate_decomposition(lg, blowup)
    w = width(blowup)
    bound = (args.t - 1) * res.params.p_floor() - 1
    td_text = emit_decomposition(blowup, lg.n)
    if args.td_out:
        with open(args.td_out, "w") as fh:
            fh.write(td_text)
    report = {
        "schema": SCHEMA,
        "kind": "line-graph-decomposition",
        "input_digest": graph_digest(g),
        "params": _params_json(g, res.params),
        "width": w,
        "width_bound": bound,
        "within_bound": w <= bound,
        "td": td_text,
        "validators": {"decomposition": ok, "violation": why},
    }
    _emit(args, _json(_maybe_timings(report, args, started)))
    return 0 if ok and w <= bound else 1


def _separator_report(g: Graph, params: Params, sep) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "separator",
        "input_digest": graph_digest(g),
        "params": None if params is None else _params_json(g, params),
        "edges": list(sep.edges),
        "components": [{"vertices": list(c), "weight": format_fraction(wt)}
                       for c, wt in sep.components],
        "bound_used": sep.bound_used,
        "reference_bound": sep.reference_bound,
        "sink_node": sep.sink_node,
        "anchors": list(sep.anchors),
        "achieved_size": len(sep.edges),
        "balance_ok": all(wt <= Fraction(1, 2) for _, wt in sep.components),
    }


def _cmd_separate(args) -> int:
    g = _read_graph(args)
    if args.weights and args.uniform:
        raise ParameterError("choose either --weights or --uniform")
    if args.weights:
        w = parse_weights(_read_text(args.weights), g.n)
    else:
        w = uniform_weights(g.n)
    started = time.perf_counter()
    res = partition_line_graph(g, args.t)
    if isinstance(res, KtCertificate):
        _emit(args, _json(_certificate_report(g, res)))
        return 3
    sep = separator_from_partition(g, res, w)
    report = _separator_report(g, res.params, sep)
    _emit(args, _json(_maybe_timings(report, args, started)))
    return 0


def _cmd_iso(args) -> int:
    g = _read_graph(args)
    started = time.perf_counter()
    wit = isoperimetric_witness(g, args.t)
    if isinstance(wit, KtCertificate):
        _emit(args, _json(_certificate_report(g, wit)))
        return 3
    report = {
        "schema": SCHEMA,
        "kind": "witness",
        "input_digest": graph_digest(g),
        "t": args.t,
        "s": list(wit.s),
        "size": len(wit.s),
        "window": [-(-g.n // 3), g.n // 2],
        "cut_size": wit.cut_size,
        "ratio": format_fraction(wit.ratio),
    }
    _emit(args, _json(_maybe_timings(report, args, started)))
    return 0


def _cmd_verify(args) -> int:
    g = parse_graph(_read_text(args.against))
    text = _read_text(args.artifact)
    if args.kind == "td":
        d, declared_n = parse_decomposition(text)
        target, _ = line_graph(g) if args.line else (g, None)
        ok, why = validate_decomposition(target, d)
        if ok and declared_n != target.n:
            ok, why = False, "vertex coverage: declared vertex count mismatch"
    else:
        data = json.loads(text)
        needed = {"model": "branch_sets", "partition": "parts",
                  "separator": "edges"}[args.kind]
        if needed not in data:
            ok, why = False, f"artifact: no {needed!r} field; wrong artifact kind?"
        elif args.kind == "model":
            ok, why = validate_model(g, [tuple(s) for s in data["branch_sets"]])
            if ok and "t" in data and len(data["branch_sets"]) != data["t"]:
                ok, why = False, f"certificate: expected {data['t']} branch sets"
        elif args.kind == "partition":
            ok, why = _verify_partition_json(g, data)
        else:
            ok, why = _verify_separator_json(g, data)
    _emit(args, _json({"schema": SCHEMA, "kind": "verify",
                       "artifact": args.kind, "ok": ok, "violation": why}))
    return 0 if ok else 1


def _verify_partition_json(g: Graph, data):
    from .partition import RootedPartition
    t = data["params"]["t"]
    params = Params.for_graph(g, t, c_sep=data["params"].get("c_sep"))
    d = data["decomposition"]
    decomp = TreeDecomposition(
        bags=tuple(tuple(b) for b in d["bags"]),
        tree_edges=tuple(tuple(e) for e in d["tree_edges"]),
        designated=d.get("designated"),
        root_clique=tuple(d["root_clique"]) if d.get("root_clique") is not None else None,
    )
    part = RootedPartition(
        parts=tuple(tuple(p) for p in data["parts"]),
        h_edges=tuple(tuple(e) for e in data["h_edges"]),
        root=tuple(data["root_clique"]),
        decomp=decomp,
    )
    ok, why = validate_partition(g, part, params)
    if ok and "embedding" in data:
        emb = tuple(tuple(e) for e in data["embedding"])
        ok, why = validate_embedding(g, part, emb, params)
    return ok, why


def _verify_separator_json(g: Graph, data):
    f = set(data["edges"])
    if not all(0 <= e < g.m for e in f):
        return False, "separator: edge id out of range"
    weights = {}
    for entry in data["components"]:
        num, den = entry["weight"].split("/")
        weights[tuple(entry["vertices"])] = Fraction(int(num), int(den))
    comps = components(g, banned_edges=f)
    if set(map(tuple, comps)) != set(weights):
        return False, "separator: recorded components disagree with G - F"
    for comp in comps:
        if weights[tuple(comp)] > Fraction(1, 2):
            return False, f"balance: component {comp[0]}... exceeds weight 1/2"
    if "bound_used" in data and len(f) > data["bound_used"]:
        return False, "size: |F| exceeds the recorded bound"
    return True, None


def _cmd_oracle(args) -> int:
    g = _read_graph(args)
    report = {"schema": SCHEMA, "kind": "oracle", "which": args.which,
              "input_digest": graph_digest(g)}
    if args.which == "tw":
        report["treewidth"] = oracles.exact_treewidth(g)
    elif args.which == "sep":
        w = (parse_weights(_read_text(args.weights), g.n)
             if args.weights else uniform_weights(g.n))
        f = oracles.min_balanced_edge_separator(g, w)
        report["edges"] = list(f)
        report["size"] = len(f)
    elif args.which == "iso":
        report["phi"] = format_fraction(oracles.exact_isoperimetric(g))
    else:
        if not args.t:
            raise ParameterError("oracle minor requires --t")
        found, model = oracles.has_kt_minor(g, args.t)
        report["t"] = args.t
        report["has_minor"] = found
        report["model"] = [list(s) for s in model] if model else None
    _emit(args, _json(report))
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = []
    for size in sizes:
        if args.family in ("grid", "toroidal-grid"):
            g = generators.generate(args.family, [size, size], args.seed)
        else:
            g = generators.generate(args.family, [size], args.seed)
        times = []
        outcome = None
        for _ in range(3):
            t0 = time.perf_counter()
            res = partition_line_graph(g, args.t)
            if not isinstance(res, KtCertificate):
                separator_from_partition(g, res, uniform_weights(g.n))
                outcome = "separator"
            else:
                outcome = "certificate"
            times.append(time.perf_counter() - t0)
        rows.append({"family": args.family, "size": size, "n": g.n, "m": g.m,
                     "t": args.t, "outcome": outcome,
                     "median_s": statistics.median(times)})
    _emit(args, _json({"schema": SCHEMA, "kind": "bench", "rows": rows}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
