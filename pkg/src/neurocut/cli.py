"""Command-line front end.

Exit codes: 0 success, 1 input error (bad flags, unreadable or malformed
files, out-of-range parameters), 2 numerical failure (diverged learning).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .bench import parse_config_file, run_experiment, summarize
from .circuits import CircuitConfig, run_trajectory
from .graphs import generate_erdos_renyi, load_graph, save_graph
from .oracles import brute_force_maxcut, spectral_cut
from .plasticity import NumericalDivergenceError
from .sdp import SolverConfig, save_solution, solve_gw_sdp
from .seeding import RNG_ALGORITHM

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="neurocut", description="Stochastic LIF circuits for MAXCUT")
    parser.add_argument("--version", action="version",
                        version=f"neurocut {__version__} (rng={RNG_ALGORITHM})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-er", help="generate an Erdos-Renyi graph")
    p.add_argument("-n", type=int, required=True, help="vertex count")
    p.add_argument("-p", type=float, required=True, help="edge probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["matrix-market", "edge-list"], default="matrix-market")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("solve-sdp", help="solve the low-rank cut relaxation")
    _graph_args(p)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("run", help="sample cuts with one method and report checkpoints")
    _graph_args(p)
    p.add_argument("--method", choices=["gw", "trevisan", "random"], required=True)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--epoch-steps", type=int, default=100)
    p.add_argument("--eta0", type=float, default=5e-3)
    p.add_argument("--tau", type=float, default=1e5)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("exact", help="exact optimum by enumeration (small graphs)")
    _graph_args(p)

    p = sub.add_parser("spectral", help="minimum-eigenvector cut")
    _graph_args(p)

    p = sub.add_parser("bench", help="run a benchmark config file")
    p.add_argument("--config", required=True, help="flat key=value config file")
    p.add_argument("--out-dir", help="override the config out_dir")
    p.add_argument("--jobs", type=int, help="override worker process count")
    return parser


def _graph_args(p) -> None:
    p.add_argument("graph", help="graph file")
    p.add_argument("--graph-format", choices=["auto", "edge-list", "matrix-market"],
                   default="auto")
    p.add_argument("--zero-indexed", action="store_true",
                   help="edge-list vertex ids start at 0 instead of 1")


def _load(args):
    from .graphs import IngestOptions
    opts = IngestOptions(indexing="zero" if args.zero_indexed else "one")
    return load_graph(args.graph, args.graph_format, opts)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _labels_line(labels) -> str:
    return "labels " + " ".join(str(int(v)) for v in labels)


def cmd_gen_er(args) -> int:
    g = generate_erdos_renyi(args.n, args.p, args.seed)
    import io

    buf = io.StringIO()
    save_graph(g, buf, args.format)
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_solve_sdp(args) -> int:
    g = _load(args)
    cfg = SolverConfig(tol=args.tol, max_iter=args.max_iter, seed=args.seed)
    sol = solve_gw_sdp(g, args.rank, cfg)
    if not sol.converged:
        print(f"warning: not converged (grad_norm={sol.grad_norm:.3e} "
              f"after {sol.iterations} iterations)", file=sys.stderr)
    if args.out:
        save_solution(sol, args.out)
    else:
        lines = [f"{sol.n} {sol.rank} {sol.objective:.17g}"]
        lines += [" ".join(f"{x:.17g}" for x in row) for row in sol.vectors]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_run(args) -> int:
    g = _load(args)
    circuit = replace(CircuitConfig(), alpha=args.alpha, epoch_steps=args.epoch_steps,
                      eta0=args.eta0, tau=args.tau, rank=args.rank)
    traj = run_trajectory(args.method, g, args.samples, args.seed, circuit,
                          graph_id=args.graph)
    lines = [f"# method={args.method} seed={args.seed} samples={args.samples}"]
    lines += [f"{s} {best}" for s, best in traj.checkpoints]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_exact(args) -> int:
    result = brute_force_maxcut(_load(args))
    sys.stdout.write(f"opt {result.value}\n{_labels_line(result.labels)}\n")
    return EXIT_OK


def cmd_spectral(args) -> int:
    g = _load(args)
    result = spectral_cut(g)
    from .graphs import cut_value

    sys.stdout.write(f"cut {cut_value(g, result.labels)}\n"
                     f"{_labels_line(result.labels)}\n"
                     f"degenerate {int(result.degenerate)}\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = parse_config_file(args.config)
    if args.out_dir:
        cfg = replace(cfg, out_dir=args.out_dir)
    if args.jobs:
        cfg = replace(cfg, jobs=args.jobs)
    result = run_experiment(cfg)
    for gid, message in result.failures:
        print(f"failed {gid}: {message}", file=sys.stderr)
    if result.rows:
        summary = summarize(result.rows)
        for row in summary.grid:
            sem = "-" if row.sem is None else f"{row.sem:.4f}"
            sys.stdout.write(f"n={row.n} p={row.p} {row.method} samples={row.samples} "
                             f"ratio={row.mean_ratio:.4f} sem={sem}\n")
        for frow in summary.files:
            sys.stdout.write(f"{frow.graph_id} {frow.method} best={frow.best_cut}\n")
    return EXIT_OK


_HANDLERS = {
    "gen-er": cmd_gen_er,
    "solve-sdp": cmd_solve_sdp,
    "run": cmd_run,
    "exact": cmd_exact,
    "spectral": cmd_spectral,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --version
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except NumericalDivergenceError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
