"""Benchmark harness: ER grids and file graphs, four methods, CSV + metadata out.

Every run row reports the best cut a method reached at a power-of-two sample
checkpoint next to a solver baseline: the best of the same number of direct
hyperplane roundings of the converged relaxation for that graph. The results
CSV and the summary are bit-reproducible for a fixed config; wall-clock times
go to a separate metadata file so they never perturb the primary outputs.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .circuits import (CircuitConfig, CutTrajectory, checkpoint_schedule,
                       run_trajectory, trajectory_from_sampler)
from .graphs import Graph, generate_erdos_renyi, load_graph
from .oracles import ENUM_LIMIT, brute_force_maxcut, reference_hyperplane_rounds
from .sdp import SolverConfig, solve_gw_sdp
from .seeding import RNG_ALGORITHM, derive_seed

CSV_HEADER = "graph_id,n,p,method,seed,samples,best_cut,solver_cut,ratio"

BENCH_METHODS = ("lif-gw", "lif-trevisan", "solver-rounding", "random")
_METHOD_MAP = {"lif-gw": "gw", "lif-trevisan": "trevisan", "random": "random"}

# Grid values used by the standard experiment scales; anything else needs the
# custom_grid flag so accidental typos do not silently change the protocol.
_KNOWN_N = {20, 50, 100, 200, 350, 500}
_KNOWN_P = {0.1, 0.25, 0.5, 0.75}


@dataclass
class ExperimentConfig:
    er_n: tuple = (20, 50, 100)
    er_p: tuple = (0.1, 0.25, 0.5)
    er_graphs_per_cell: int = 5
    graph_files: tuple = ()
    methods: tuple = ("lif-gw", "lif-trevisan", "random")
    samples: int = 2 ** 16
    base_seed: int = 2022
    circuit: CircuitConfig = CircuitConfig()
    out_dir: str | None = None
    jobs: int = 1
    custom_grid: bool = False
    self_test: bool = False  # check best cuts against exact optima on tiny graphs

    @classmethod
    def desk_scale(cls, **overrides) -> "ExperimentConfig":
        """Laptop-sized grid: n in {20,50,100}, p in {0.1,0.25,0.5}, 2^16 samples.

        The learning-rate horizon shrinks with the sample budget (tau 4000
        instead of the free-running default 1e5) so the learner is about as
        annealed at the final checkpoint as a full-scale run is at 2^20.
        """
        cfg = cls(circuit=CircuitConfig(tau=4000.0))
        return replace(cfg, **overrides)

    @classmethod
    def full_scale(cls, **overrides) -> "ExperimentConfig":
        """Full grid: n up to 500, p up to 0.75, 10 graphs per cell, 2^20 samples."""
        cfg = cls(er_n=(50, 100, 200, 350, 500), er_p=(0.1, 0.25, 0.5, 0.75),
                  er_graphs_per_cell=10, samples=2 ** 20)
        return replace(cfg, **overrides)

    def validate(self) -> None:
        if not self.methods:
            raise ValueError("methods must not be empty")
        for m in self.methods:
            if m not in BENCH_METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {BENCH_METHODS}")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.er_graphs_per_cell < 0:
            raise ValueError("er_graphs_per_cell must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for p in self.er_p:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"edge probability {p} outside [0, 1]")
        if not self.custom_grid:
            bad_n = [n for n in self.er_n if n not in _KNOWN_N]
            bad_p = [p for p in self.er_p if p not in _KNOWN_P]
            if bad_n or bad_p:
                raise ValueError(
                    f"ER grid values {bad_n or bad_p} are outside the preset scales; "
                    "set custom_grid=true to run them anyway")


@dataclass
class ResultRow:
    graph_id: str
    n: int
    p: float | None  # None for file graphs
    method: str
    seed: int
    samples: int
    best_cut: int
    solver_cut: int
    ratio: float | None  # best/solver at the same checkpoint; None when solver_cut == 0
    wall_time: float     # diagnostic only, excluded from the CSV


@dataclass
class ExperimentResult:
    rows: list
    failures: list      # (graph_id, message) pairs
    metadata: dict


def _config_metadata(cfg: ExperimentConfig) -> dict:
    meta = {"artifact": "neurocut", "rng_algorithm": RNG_ALGORITHM}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if f.name == "circuit":
            for cf in fields(CircuitConfig):
                meta[f"config.circuit.{cf.name}"] = _fmt(getattr(value, cf.name))
        else:
            meta[f"config.{f.name}"] = _fmt(value)
    return meta


def _fmt(value) -> str:
    if isinstance(value, (tuple, list)):
        return ",".join(str(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _job_list(cfg: ExperimentConfig) -> list:
    jobs = []
    for n in cfg.er_n:
        for p in cfg.er_p:
            for k in range(cfg.er_graphs_per_cell):
                gid = f"er-n{n}-p{p}-{k}"
                jobs.append((gid, ("er", n, p, k)))
    for path in cfg.graph_files:
        gid = Path(path).stem
        jobs.append((gid, ("file", str(path))))
    return jobs


def _materialize(cfg: ExperimentConfig, source) -> tuple:
    """Returns (graph, p) where p is the ER density or None for files."""
    kind = source[0]
    if kind == "er":
        _, n, p, k = source
        g = generate_erdos_renyi(n, p, derive_seed(cfg.base_seed, "er", n, p, k))
        return g, p
    g = load_graph(source[1])
    return g, None


def _run_graph_job(args) -> tuple:
    """One graph, all methods. Returns (rows, meta, failure-or-None)."""
    cfg, graph_id, source = args
    meta: dict = {}
    try:
        g, p = _materialize(cfg, source)
        solver_traj, solution = _solver_baseline(cfg, graph_id, g, meta)
    except (ValueError, OSError) as err:
        return [], meta, (graph_id, str(err))
    solver_at = dict(solver_traj.checkpoints)

    rows = []
    try:
        for method in cfg.methods:
            if method == "solver-rounding":
                traj = solver_traj
                seed = solver_traj.seed
            else:
                seed = derive_seed(cfg.base_seed, graph_id, method)
                traj = run_trajectory(_METHOD_MAP[method], g, cfg.samples, seed, cfg.circuit,
                                      solution=solution if method == "lif-gw" else None,
                                      graph_id=graph_id)
            meta[f"job.{graph_id}.{method}.seed"] = str(seed)
            meta[f"job.{graph_id}.{method}.wall_time"] = f"{traj.wall_times[-1]:.3f}"
            for (samples, best), wall in zip(traj.checkpoints, traj.wall_times):
                solver_cut = solver_at[samples]
                ratio = best / solver_cut if solver_cut > 0 else None
                rows.append(ResultRow(graph_id, g.n, p, method, seed, samples,
                                      best, solver_cut, ratio, wall))
    except (RuntimeError, ValueError) as err:
        return [], meta, (graph_id, str(err))

    if cfg.self_test and g.n <= ENUM_LIMIT:
        opt = brute_force_maxcut(g).value
        meta[f"job.{graph_id}.exact_opt"] = str(opt)
        for row in rows:
            if row.best_cut > opt:
                return [], meta, (graph_id, f"best cut {row.best_cut} exceeds exact optimum {opt}")
    return rows, meta, None


def _solver_baseline(cfg: ExperimentConfig, graph_id: str, g: Graph, meta: dict) -> tuple:
    """Best-of-budget direct roundings of the relaxation; flat zero when m == 0."""
    seed = derive_seed(cfg.base_seed, graph_id, "solver-rounding")
    if g.m == 0:
        traj = CutTrajectory(graph_id, "solver-rounding", seed)
        for cp in checkpoint_schedule(cfg.samples):
            traj.checkpoints.append((cp, 0))
            traj.wall_times.append(0.0)
        return traj, None
    sdp_seed = derive_seed(cfg.base_seed, graph_id, "sdp")
    solution = solve_gw_sdp(g, cfg.circuit.rank,
                            SolverConfig(tol=cfg.circuit.sdp_tol,
                                         max_iter=cfg.circuit.sdp_max_iter, seed=sdp_seed))
    meta[f"job.{graph_id}.sdp_seed"] = str(sdp_seed)
    meta[f"job.{graph_id}.sdp_objective"] = f"{solution.objective:.6f}"
    meta[f"job.{graph_id}.sdp_grad_norm"] = f"{solution.grad_norm:.3e}"
    meta[f"job.{graph_id}.sdp_converged"] = str(solution.converged)
    rng = np.random.default_rng(seed)

    def sampler(b):
        return reference_hyperplane_rounds(solution.vectors, b, rng)

    traj = trajectory_from_sampler(g, sampler, cfg.samples, "solver-rounding", seed, graph_id)
    return traj, solution


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run the configured grid and files; optionally write CSV and metadata.

    Jobs are one graph each and may run in worker processes (cfg.jobs > 1);
    results are assembled in the canonical job order either way.
    """
    cfg.validate()
    jobs = [(cfg, gid, src) for gid, src in _job_list(cfg)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_run_graph_job, jobs))
    else:
        outcomes = [_run_graph_job(j) for j in jobs]

    rows: list = []
    failures: list = []
    metadata = _config_metadata(cfg)
    for job_rows, meta, failure in outcomes:
        rows.extend(job_rows)
        metadata.update(meta)
        if failure is not None:
            failures.append(failure)
            metadata[f"failure.{failure[0]}"] = failure[1]

    if cfg.out_dir is not None:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_results_csv(rows, out / "results.csv")
        write_summary_csv(summarize(rows) if rows else Summary([], []), out / "summary.csv")
        write_metadata(metadata, out / "metadata.txt")
    return ExperimentResult(rows, failures, metadata)


def write_results_csv(rows, path) -> None:
    with open(os.fspath(path), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER.split(","))
        for r in rows:
            writer.writerow([
                r.graph_id, r.n, "file" if r.p is None else r.p, r.method, r.seed,
                r.samples, r.best_cut, r.solver_cut,
                "" if r.ratio is None else f"{r.ratio:.6f}",
            ])


def write_metadata(metadata: dict, path) -> None:
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        for key, value in metadata.items():
            fh.write(f"{key}={value}\n")


@dataclass
class GridSummaryRow:
    n: int
    p: float
    method: str
    samples: int
    mean_ratio: float
    sem: float | None  # None with a single graph: standard error undefined
    graphs: int


@dataclass
class FileSummaryRow:
    graph_id: str
    method: str
    best_cut: int


@dataclass
class Summary:
    grid: list
    files: list


def summarize(rows) -> Summary:
    """Mean ratio and standard error per ER cell/method/checkpoint, plus the
    best cut per file graph and method."""
    if not rows:
        raise ValueError("no rows to summarize")
    grid_groups: dict = {}
    file_groups: dict = {}
    for r in rows:
        if r.p is None:
            key = (r.graph_id, r.method)
            file_groups[key] = max(file_groups.get(key, 0), r.best_cut)
        elif r.ratio is not None:
            grid_groups.setdefault((r.n, r.p, r.method, r.samples), []).append(r.ratio)
    grid = []
    for (n, p, method, samples), ratios in sorted(grid_groups.items()):
        arr = np.asarray(ratios)
        sem = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size >= 2 else None
        grid.append(GridSummaryRow(n, p, method, samples, float(arr.mean()), sem, arr.size))
    files = [FileSummaryRow(gid, method, best)
             for (gid, method), best in sorted(file_groups.items())]
    return Summary(grid, files)


def write_summary_csv(summary: Summary, path) -> None:
    with open(os.fspath(path), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "p", "method", "samples", "mean_ratio", "sem", "graphs"])
        for row in summary.grid:
            writer.writerow([row.n, row.p, row.method, row.samples,
                             f"{row.mean_ratio:.6f}",
                             "" if row.sem is None else f"{row.sem:.6f}", row.graphs])
        if summary.files:
            writer.writerow([])
            writer.writerow(["graph_id", "method", "best_cut"])
            for frow in summary.files:
                writer.writerow([frow.graph_id, frow.method, frow.best_cut])


# --- flat key=value config files -------------------------------------------

_LIST_KEYS = {"er_n", "er_p", "graph_files", "methods"}
_INT_KEYS = {"er_graphs_per_cell", "samples", "base_seed", "jobs"}
_BOOL_KEYS = {"custom_grid", "self_test"}
_CIRCUIT_FLOAT_KEYS = {"alpha", "dt", "capacitance", "threshold", "gw_weight_scale",
                       "trevisan_weight_scale", "eta0", "tau", "sdp_tol"}
_CIRCUIT_INT_KEYS = {"epoch_steps", "rank", "sdp_max_iter"}


def parse_config_file(path) -> ExperimentConfig:
    """Build an ExperimentConfig from flat 'key = value' lines.

    Lists are comma-separated; 'scale = desk|full' selects a preset before
    other keys override it; unknown keys are input errors.
    """
    entries = []
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"line {lineno}: expected key=value, got {stripped!r}")
            key, _, value = stripped.partition("=")
            entries.append((lineno, key.strip(), value.strip()))

    cfg = ExperimentConfig()
    for lineno, key, value in entries:
        if key == "scale":
            if value == "desk":
                cfg = ExperimentConfig.desk_scale()
            elif value == "full":
                cfg = ExperimentConfig.full_scale()
            else:
                raise ValueError(f"line {lineno}: unknown scale {value!r}")
    circuit_kwargs: dict = {}
    for lineno, key, value in entries:
        try:
            if key == "scale":
                continue
            elif key in _LIST_KEYS:
                parts = [v.strip() for v in value.split(",") if v.strip()]
                if key == "er_n":
                    cfg = replace(cfg, er_n=tuple(int(v) for v in parts))
                elif key == "er_p":
                    cfg = replace(cfg, er_p=tuple(float(v) for v in parts))
                elif key == "methods":
                    cfg = replace(cfg, methods=tuple(parts))
                else:
                    cfg = replace(cfg, graph_files=tuple(parts))
            elif key in _INT_KEYS:
                cfg = replace(cfg, **{key: int(value)})
            elif key in _BOOL_KEYS:
                if value.lower() not in ("true", "false", "1", "0"):
                    raise ValueError(f"bad boolean {value!r}")
                cfg = replace(cfg, **{key: value.lower() in ("true", "1")})
            elif key == "out_dir":
                cfg = replace(cfg, out_dir=value or None)
            elif key in _CIRCUIT_FLOAT_KEYS:
                circuit_kwargs[key] = float(value)
            elif key in _CIRCUIT_INT_KEYS:
                circuit_kwargs[key] = None if value.lower() == "none" else int(value)
            else:
                raise ValueError(f"unknown config key {key!r}")
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}") from None
    if circuit_kwargs:
        cfg = replace(cfg, circuit=replace(cfg.circuit, **circuit_kwargs))
    return cfg
