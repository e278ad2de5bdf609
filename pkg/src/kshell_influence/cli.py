"""Command line entry point: ``kshell <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bench, centrality
from .decomposition import k_shell_decompose, shell_populations
from .diffusion import DEFAULT_BETA, DEFAULT_REALIZATIONS, SimConfig, simulate_mean
from .graph import generate_synthetic, read_edge_list, write_edge_list
from .seeding import Algorithm, rank_nodes, select_seeds


def _graph_export(args):
    g = read_edge_list(args.graph)
    write_edge_list(g, sys.stdout)


def _graph_generate(args):
    params = {"n": args.n}
    if args.model == "erdos_renyi":
        params["p"] = args.p
    else:
        params["m"] = args.m
    g = generate_synthetic(args.model, args.seed, **params)
    write_edge_list(g, sys.stdout)


def _decompose(args):
    g = read_edge_list(args.graph)
    sa = k_shell_decompose(g)
    out = sys.stdout
    out.write("node_label,shell_index\n")
    for label, s in zip(g.labels, sa.shell_index):
        out.write(f"{label},{s}\n")
    out.write(f"# shells={sa.n_shells} core_size={sa.core_size}\n")


def _shell_dist(args):
    sa = k_shell_decompose(read_edge_list(args.graph))
    sys.stdout.write("shell_index,population\n")
    for s, p in shell_populations(sa):
        sys.stdout.write(f"{s},{p}\n")


def _rank(args):
    g = read_edge_list(args.graph)
    sv = centrality.compute(g, args.metric)
    if not sv.converged:
        logging.warning("%s did not converge after %d iterations", sv.metric, sv.iterations)
    sys.stdout.write("node_label,score\n")
    for i in rank_nodes(sv.scores, g.degrees):
        sys.stdout.write(f"{g.labels[i]},{float(sv.scores[i])!r}\n")


def _seeds(args):
    g = read_edge_list(args.graph)
    ss = select_seeds(args.algo, g, args.n)
    for i in ss.members:
        sys.stdout.write(f"{g.labels[i]}\n")
    if ss.allocation_trace:
        trace = [{"shell": s, "quota": q, "selected": k} for s, q, k in ss.allocation_trace]
        sys.stdout.write("# allocation_trace " + json.dumps(trace) + "\n")
    if ss.truncated:
        logging.warning("n=%d exceeds N=%d; all nodes returned", args.n, g.node_count)


def read_seed_labels(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [s for s in (line.strip() for line in fh) if s and not s.startswith("#")]


def _simulate(args):
    g = read_edge_list(args.graph)
    try:
        seeds = [g.node_id(lab) for lab in read_seed_labels(args.seeds)]
    except KeyError as exc:
        raise SystemExit(f"seed label {exc.args[0]!r} not in graph")
    cfg = SimConfig(beta=args.beta, realizations=args.runs, master_seed=args.seed)
    res = simulate_mean(g, seeds, cfg, workers=args.workers)
    json.dump(res.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")


def _bench(args):
    if args.full:
        if not args.data_dir:
            raise SystemExit("--full needs --data-dir")
        cfg = bench.full_profile(
            args.data_dir,
            sim=SimConfig(master_seed=args.seed if args.seed is not None else 0),
            workers=args.workers,
        )
        if not cfg.datasets:
            raise SystemExit(f"no known dataset files under {args.data_dir}")
    else:
        if not args.config:
            raise SystemExit("need --config or --full")
        cfg = bench.load_config(args.config)
    report = bench.run_experiment(cfg)
    bench.write_outputs(report, args.out_dir)
    for row in report.rows:
        if row.error:
            sys.stdout.write(f"{row.dataset}: ERROR {row.error}\n")
        else:
            sys.stdout.write(
                f"{row.dataset:<14} {row.algorithm:<8} n={row.n_seeds:<7} "
                f"coverage={row.mean_coverage:.4f} std={row.std:.4f} relative={row.relative_coverage:.4f}\n"
            )
    if args.full:
        for ds, ok in bench.directional_check(report).items():
            sys.stdout.write(f"{'PASS' if ok else 'FAIL'} {ds}: Ks-P relative coverage > 1.0\n")
    return 1 if report.errored else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kshell", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    gp = sub.add_parser("graph", help="edge-list utilities")
    gsub = gp.add_subparsers(dest="graph_command", required=True)
    ex = gsub.add_parser("export", help="re-emit a parsed graph as an edge list")
    ex.add_argument("graph")
    ex.set_defaults(func=_graph_export)
    gen = gsub.add_parser("generate", help="write a synthetic graph")
    gen.add_argument("--model", choices=["erdos_renyi", "barabasi_albert"], required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.1)
    gen.add_argument("--m", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(func=_graph_generate)

    d = sub.add_parser("decompose", help="shell index per node")
    d.add_argument("graph")
    d.set_defaults(func=_decompose)

    sd = sub.add_parser("shell-dist", help="shell population distribution")
    sd.add_argument("graph")
    sd.set_defaults(func=_shell_dist)

    r = sub.add_parser("rank", help="score nodes by a centrality metric")
    r.add_argument("graph")
    r.add_argument("--metric", choices=sorted(centrality.METRICS), required=True)
    r.set_defaults(func=_rank)

    s = sub.add_parser("seeds", help="select a seed set")
    s.add_argument("graph")
    s.add_argument("--algo", choices=[a.value for a in Algorithm], required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=_seeds)

    sim = sub.add_parser("simulate", help="Monte Carlo spreading from a seed file")
    sim.add_argument("graph")
    sim.add_argument("--seeds", required=True, help="file with one node label per line")
    sim.add_argument("--beta", type=float, default=DEFAULT_BETA)
    sim.add_argument("--runs", type=int, default=DEFAULT_REALIZATIONS)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--workers", type=int, default=1)
    sim.set_defaults(func=_simulate)

    b = sub.add_parser("bench", help="run the full comparison")
    b.add_argument("--config")
    b.add_argument("--out-dir", default="bench-out")
    b.add_argument("--full", action="store_true", help="all five paper-scale datasets found in --data-dir")
    b.add_argument("--data-dir")
    b.add_argument("--seed", type=int, help="master seed for --full")
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args) or 0
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
