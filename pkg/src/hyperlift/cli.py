"""Command-line interface.

Subcommands:
    gen          sample a random hypergraph, write .hg
    project      project a .hg file to a .el graph
    reconstruct  run cc / map / greedy on a .el graph, write .hg + stats JSON
    preimage     exact minimum-preimage report for a .el graph, as JSON
    census       exact densities, g tables and thresholds for (d, delta)
    search       the ambiguity search; exit 0 if exhausted, 2 if budget-limited
    sweep        run a seeded grid from a config file, write CSV
    hsbm         similarity-matrix -> support -> MAP pipeline summary

Fractions on the command line are exact: "2/5" or "0.4" both mean 2/5.

The sweep config grammar is one `key = value` pair per line, `#` comments,
lists comma-separated:

    d = 3
    n = 100, 200
    delta = 1/5, 2/5
    seeds = 50
    base_seed = 7
    algorithms = cc, map, greedy
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .census import (
    automorphism_count,
    build_ambiguous_gadget,
    build_map_failure_gadget,
    expected_count_exponent,
    g_0,
    g_k,
    max_density,
    threshold_table,
)
from .core import (
    DensityParams,
    HsbmParams,
    generate_random_hypergraph,
    graph_from_text,
    graph_to_text,
    hypergraph_from_text,
    hypergraph_to_text,
    project,
    read_text,
    write_text,
)
from .harness import RESULT_COLUMNS, SweepSpec, hsbm_pipeline, run_sweep, write_sweep_csv
from .preimage import min_preimage
from .reconstruct import ALGORITHM_NAMES, run_algorithm
from .search import SearchConfig, dfs_search


def _emit(args, text: str) -> None:
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_gen(args) -> int:
    params = DensityParams(args.d, Fraction(args.delta), args.n, Fraction(args.c))
    h = generate_random_hypergraph(params, args.seed, p_override=args.p_override)
    _emit(args, hypergraph_to_text(h))
    return 0


def _cmd_project(args) -> int:
    h = hypergraph_from_text(read_text(args.input))
    _emit(args, graph_to_text(project(h)))
    return 0


def _cmd_reconstruct(args) -> int:
    g = graph_from_text(read_text(args.input))
    res = run_algorithm(args.algo, g, args.d)
    stats = {
        "algorithm": res.algorithm,
        "is_preimage": res.is_preimage,
        "output_size": len(res.output),
        "component_sizes": res.component_sizes,
        "ambiguous_components": res.ambiguous_components,
        "elapsed": res.elapsed,
    }
    if args.out:
        write_text(args.out, hypergraph_to_text(res.output))
        write_text(args.out + ".json", json.dumps(stats, indent=2) + "\n")
    else:
        sys.stdout.write(hypergraph_to_text(res.output))
        sys.stderr.write(json.dumps(stats) + "\n")
    return 0


def _cmd_preimage(args) -> int:
    g = graph_from_text(read_text(args.input))
    report = min_preimage(g, args.d, vertex_bound=args.vertex_bound, cap=args.cap)
    _emit(args, json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_census(args) -> int:
    d, delta = args.d, Fraction(args.delta)
    preimage1, _, _ = build_ambiguous_gadget(d)
    hb = build_map_failure_gadget(d)
    g0_value, g0_witness = g_0(d, delta) if 3 <= d <= 7 else (None, None)
    payload = {
        "thresholds": threshold_table().to_dict(d),
        "ambiguous_gadget_preimage": {
            "v": preimage1.v,
            "e": preimage1.e,
            "max_density": str(max_density(preimage1)),
            "aut": automorphism_count(preimage1),
            "exponent": str(expected_count_exponent(preimage1, d, delta)),
        },
        "map_failure_gadget": {
            "v": hb.v,
            "e": hb.e,
            "max_density": str(max_density(hb)),
        },
        "g0": None
        if g0_value is None
        else {"value": str(g0_value), "witness": [list(s) for s in g0_witness]},
        "gk": {str(k): str(g_k(d, k, delta)) for k in range(2, d + 1)}
        if d <= 7
        else None,
    }
    _emit(args, json.dumps(payload, indent=2))
    return 0


def _cmd_search(args) -> int:
    config = SearchConfig(
        d=args.d,
        delta=Fraction(args.delta),
        max_depth=args.max_depth,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        dedup=not args.no_dedup,
        strict_neighbors=not args.loose_neighbors,
        include_single_root=args.single_root,
    )
    report = dfs_search(config)
    _emit(args, json.dumps(report.to_dict(), indent=2))
    return 0 if report.exhausted else 2


def parse_sweep_config(text: str) -> SweepSpec:
    values: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    def split(v: str) -> list:
        return [x.strip() for x in v.split(",") if x.strip()]
    return SweepSpec(
        d=int(values["d"]),
        n_list=tuple(int(x) for x in split(values["n"])),
        delta_list=tuple(Fraction(x) for x in split(values["delta"])),
        num_seeds=int(values["seeds"]),
        base_seed=int(values.get("base_seed", "0")),
        algorithms=tuple(split(values.get("algorithms", "cc, map, greedy"))),
    )


def _cmd_sweep(args) -> int:
    spec = parse_sweep_config(read_text(args.config))
    if args.threads > 1:
        spec = SweepSpec(
            d=spec.d,
            n_list=spec.n_list,
            delta_list=spec.delta_list,
            num_seeds=spec.num_seeds,
            base_seed=spec.base_seed,
            algorithms=spec.algorithms,
            threads=args.threads,
        )
    if args.format == "json":
        # JSON mirror of the CSV schema (timing stays out of the records)
        rows = [
            dict(zip(RESULT_COLUMNS, record.result_row()))
            for record in run_sweep(spec)
        ]
        _emit(args, json.dumps(rows, indent=2))
        return 0
    out = args.out or "sweep.csv"
    count = write_sweep_csv(spec, out, out + ".timing")
    sys.stderr.write(f"wrote {count} records to {out}\n")
    return 0


def _cmd_hsbm(args) -> int:
    params = HsbmParams(args.d, args.n, Fraction(args.alpha), Fraction(args.beta))
    seeds = [args.seed + i for i in range(args.seeds)]
    summary = hsbm_pipeline(params, seeds)
    _emit(args, json.dumps(summary, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlift",
        description="reconstruct random d-uniform hypergraphs from projections",
    )
    parser.add_argument("--seed", type=int, default=0, help="base 64-bit seed")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--format", choices=["csv", "json"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a random hypergraph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", required=True, help="exact rational, e.g. 2/5")
    p.add_argument("--c", default="1", help="density constant factor")
    p.add_argument("--p-override", type=float, default=None, dest="p_override")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("project", help="project .hg to .el")
    p.add_argument("input")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("reconstruct", help="reconstruct a hypergraph from .el")
    p.add_argument("--algo", choices=sorted(ALGORITHM_NAMES), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("input")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("preimage", help="exact minimum-preimage report")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--vertex-bound", type=int, default=64, dest="vertex_bound")
    p.add_argument("input")
    p.set_defaults(func=_cmd_preimage)

    p = sub.add_parser("census", help="exact densities, g tables, thresholds")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", required=True)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("search", help="ambiguity search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--max-depth", type=int, default=None, dest="max_depth")
    p.add_argument("--node-budget", type=int, default=1_000_000, dest="node_budget")
    p.add_argument("--time-budget", type=float, default=None, dest="time_budget")
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("--loose-neighbors", action="store_true")
    p.add_argument("--single-root", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("sweep", help="run a sweep config, write CSV")
    p.add_argument("config")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("hsbm", help="HSBM reduction pipeline")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--seeds", type=int, default=20)
    p.set_defaults(func=_cmd_hsbm)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
