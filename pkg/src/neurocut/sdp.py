"""Low-rank MAXCUT relaxation solved on the product of unit spheres.

Vertices carry unit vectors w_i in R^r; the objective

    f(W) = sum_{(i,j) in E} (1 - w_i . w_j) / 2

upper-bounds the exact maximum cut whenever the rank is large enough to hold
the optimizer (r is a relaxation knob, 4 by default). Maximization is plain
Riemannian gradient ascent: project the Euclidean gradient onto the sphere
tangent spaces row-wise, take a backtracking step, renormalize the rows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph


@dataclass
class SolverConfig:
    tol: float = 1e-6
    max_iter: int | None = None  # None -> 50 * n accepted steps
    step0: float = 1.0
    seed: int = 0
    armijo: float = 1e-4
    record_history: bool = False


@dataclass
class SdpSolution:
    vectors: np.ndarray  # (n, r), unit rows
    rank: int
    objective: float
    grad_norm: float | None
    iterations: int | None
    converged: bool
    history: list = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return int(self.vectors.shape[0])


def effective_rank(rank: int, n: int) -> int:
    """Requested rank, clamped so tiny graphs do not waste dimensions."""
    if rank < 2:
        raise ValueError("rank must be at least 2")
    return min(rank, n) if n < 4 else rank


def normalize_rows(vectors) -> np.ndarray:
    """Rows rescaled to unit Euclidean norm. Idempotent and invariant to a
    positive global prescale."""
    w = np.asarray(vectors, dtype=float)
    norms = np.linalg.norm(w, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("cannot normalize a zero row")
    return w / norms


def _edge_dots(g: Graph, w: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", w[g.edges[:, 0]], w[g.edges[:, 1]])


def _objective(g: Graph, w: np.ndarray) -> float:
    return 0.5 * float(np.sum(1.0 - _edge_dots(g, w)))


def sdp_objective(g: Graph, solution: SdpSolution) -> float:
    """Recompute sum over edges of (1 - w_i . w_j)/2 from the stored vectors."""
    w = np.asarray(solution.vectors, dtype=float)
    if w.shape[0] != g.n:
        raise ValueError(f"solution has {w.shape[0]} rows, graph has {g.n} vertices")
    return _objective(g, w)


def solve_gw_sdp(g: Graph, rank: int = 4, config: SolverConfig | None = None) -> SdpSolution:
    """Maximize the relaxation by Riemannian gradient ascent.

    Deterministic for a fixed config.seed. Stops when the Riemannian gradient
    norm drops to config.tol or the iteration cap is hit; a capped run comes
    back flagged converged=False rather than raising, so callers can decide.
    """
    cfg = config or SolverConfig()
    if g.m == 0:
        raise ValueError("graph has no edges; the relaxation is trivial")
    r = effective_rank(rank, g.n)
    rng = np.random.default_rng(cfg.seed)
    w = normalize_rows(rng.standard_normal((g.n, r)))
    a = g.adjacency
    cap = cfg.max_iter if cfg.max_iter is not None else 50 * g.n
    f = _objective(g, w)
    history = [f] if cfg.record_history else []
    step = cfg.step0
    grad_norm = np.inf
    iterations = 0
    while True:
        grad = -0.5 * (a @ w)
        grad -= np.einsum("ij,ij->i", grad, w)[:, None] * w  # tangent projection
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= cfg.tol or iterations >= cap:
            break
        gsq = grad_norm * grad_norm
        step = min(step * 2.0, 1e6)  # optimistic growth, then backtrack
        accepted = False
        while step > 1e-14:
            trial = normalize_rows(w + step * grad)
            f_trial = _objective(g, trial)
            if f_trial >= f + cfg.armijo * step * gsq:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # no productive step at working precision
        assert f_trial >= f - 1e-12, "line search accepted a descent step"
        w, f = trial, f_trial
        iterations += 1
        if cfg.record_history:
            history.append(f)
    return SdpSolution(w, r, f, grad_norm, iterations, grad_norm <= cfg.tol, history)


def save_solution(solution: SdpSolution, path) -> None:
    """Plain-text dump: header line 'n r objective', then one vector row per vertex.

    Values use 17 significant digits, enough for an exact float64 round trip.
    """
    lines = [f"{solution.n} {solution.rank} {solution.objective:.17g}"]
    for row in solution.vectors:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_solution(path) -> SdpSolution:
    """Inverse of save_solution. Solver diagnostics are not serialized, so the
    loaded solution carries grad_norm=None, iterations=None, converged=True."""
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty solution file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("header must be 'n r objective'")
    n, r = int(head[0]), int(head[1])
    objective = float(head[2])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} vector rows, found {len(lines) - 1}")
    vectors = np.array([[float(tok) for tok in ln.split()] for ln in lines[1:]], dtype=float)
    if vectors.shape != (n, r):
        raise ValueError(f"vector block has shape {vectors.shape}, header says ({n}, {r})")
    return SdpSolution(vectors, r, objective, None, None, True)
