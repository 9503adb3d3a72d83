"""Minimum number of induced edges over l-vertex subsets, r(l).

Three routes:

* :func:`brute_force_r` enumerates every subset (tiny instances; the oracle);
* :func:`branch_and_bound_r` is exact, with admissible completion bounds;
* :func:`local_search_r` gives heuristic upper witnesses at larger n.

Both exact routes use the complement identity
``E(W) = |E_n| - d_n |W1| + E(W1)``, so r(l) and r(C(n,3) - l) differ by a
known constant and only the smaller side is ever searched.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .combinat import binomial
from .construction import build_construction
from .graph import MAX_BITROW_VERTICES, VertexSubset, adjacency_bitrows, count_induced_edges, graph_stats, vertex_masks

ORACLE = "oracle"
PROVEN = "proven-optimal"
HEURISTIC = "heuristic-upper"

DEFAULT_ENUMERATION_LIMIT = 50_000_000
_UNLIMITED = 2**62


class BudgetRefusal(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its size limit."""

    def __init__(self, n: int, l: int, size: int, limit: int):
        super().__init__(f"enumerating r({l}) at n={n} needs {size} subsets (limit {limit})")
        self.n, self.l, self.size, self.limit = n, l, size, limit


@dataclass(frozen=True)
class SearchConfig:
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None
    thread_count: int = 1
    seed: int = 0
    restarts: int = 1
    symmetry: bool = True

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node_budget must be non-negative")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if self.thread_count < 1 or self.restarts < 1:
            raise ValueError("thread_count and restarts must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    n: int
    l: int
    min_edges: int
    witness: VertexSubset
    status: str
    nodes_explored: int = 0
    elapsed: float = 0.0
    method: str = ""

    def as_dict(self, include_witness: bool = True) -> dict:
        out = {
            "n": self.n,
            "l": self.l,
            "min_edges": self.min_edges,
            "status": self.status,
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "elapsed": self.elapsed,
        }
        if include_witness:
            out["witness"] = self.witness.to_json()
        return out


def _check_l(n: int, l: int) -> int:
    N = binomial(n, 3)
    if not 0 <= l <= N:
        raise ValueError(f"l={l} outside 0..C({n},3)={N}")
    return N


def _flip(n: int, size: int, inner_edges: int) -> int:
    """E(W) from E(W1) for |W1| = size."""
    p = graph_stats(n)
    return p.edge_count - p.degree * size + inner_edges


def _complement_indices(N: int, idx: np.ndarray) -> np.ndarray:
    keep = np.ones(N, dtype=bool)
    keep[idx] = False
    return np.flatnonzero(keep)


# --- oracle -------------------------------------------------------------------

def enumeration_size(n: int, l: int) -> int:
    N = _check_l(n, l)
    return comb(N, min(l, N - l))


def brute_force_r(n: int, l: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> SolveResult:
    """r(l) by enumerating all l-subsets, or all complements when that is smaller."""
    start = time.perf_counter()
    N = _check_l(n, l)
    size = enumeration_size(n, l)
    if size > limit:
        raise BudgetRefusal(n, l, size, limit)
    k = min(l, N - l)
    bits = adjacency_bitrows(n)
    best, idx, count = kernels.brute_min_edges(bits, N, k)
    idx = np.asarray(idx, dtype=np.int64)
    if k == l:
        value, members = int(best), idx
    else:
        value, members = _flip(n, k, int(best)), _complement_indices(N, idx)
    return SolveResult(n, l, value, VertexSubset(n, members), ORACLE, int(count),
                       time.perf_counter() - start, "oracle")


# --- branch and bound ---------------------------------------------------------

def _initial_incumbent(n: int, l: int, k: int) -> tuple[int, np.ndarray]:
    """Best construction-based k-set for the (possibly complemented) problem."""
    N = binomial(n, 3)
    options = []
    if k >= 1:
        plan = build_construction(n, k)
        options.append((plan.actual_edges, plan.trimmed_set.indices))
    if k != l and l >= 1:
        plan = build_construction(n, l)
        inner = plan.actual_edges - _flip(n, k, 0)
        options.append((inner, _complement_indices(N, plan.trimmed_set.indices)))
    if not options:
        return 0, np.zeros(0, dtype=np.int64)
    return min(options, key=lambda o: o[0])


def _tasks(N: int, k: int, symmetry: bool) -> list[np.ndarray]:
    if symmetry:
        # vertex-transitive graph: some optimum contains vertex 0
        if k == 1:
            return [np.array([0], dtype=np.int64)]
        return [np.array([0, v], dtype=np.int64) for v in range(1, N - k + 2)]
    return [np.array([v], dtype=np.int64) for v in range(N - k + 1)]


def branch_and_bound_r(n: int, l: int, cfg: SearchConfig = SearchConfig()) -> SolveResult:
    """Exact r(l) by depth-first search over colex-ordered index sets.

    A partial set with e internal edges that still needs m vertices from the
    candidates after position s is pruned when e plus a lower bound on the
    completion reaches the incumbent. The completion bound adds

    * the m smallest counts of already-chosen neighbours among candidates, and
    * the fewest edges m vertices can span under a greedy clique cover of the
      candidates (vertices from one clique are pairwise adjacent).

    The two terms count disjoint edge sets, so their sum never overestimates.
    The search is split into subtrees by the first chosen vertices; threads
    share the incumbent. Ties are resolved towards the lexicographically
    smallest witness, so the output does not depend on ``thread_count``.
    """
    start = time.perf_counter()
    N = _check_l(n, l)
    if N > MAX_BITROW_VERTICES:
        raise ValueError(f"C({n},3)={N} exceeds {MAX_BITROW_VERTICES}; use local_search_r")
    k = min(l, N - l)
    flipped = k != l

    inc_val, inc_set = _initial_incumbent(n, l, k)
    state = {"val": int(inc_val), "task": -1, "set": np.asarray(inc_set, dtype=np.int64),
             "nodes": 0, "complete": True}
    if k >= 1 and (cfg.node_budget is None or cfg.node_budget > 0):
        bits = adjacency_bitrows(n)
        forced = kernels.forced_edges_table(bits, N, k)
        node_cap = _UNLIMITED if cfg.node_budget is None else cfg.node_budget
        deadline = None if cfg.time_budget is None else start + cfg.time_budget
        lock = threading.Lock()

        def run(j: int, prefix: np.ndarray) -> None:
            with lock:
                if not state["complete"] and cfg.thread_count == 1:
                    return
                remaining = node_cap - state["nodes"]
                timed_out = deadline is not None and time.perf_counter() > deadline
                if remaining <= 0 or timed_out:
                    state["complete"] = False
                    return
                val, task = state["val"], state["task"]
            best, found, witness, nodes, complete = kernels.bb_task(
                bits, N, k, forced, prefix, val, task <= j, remaining)
            with lock:
                state["nodes"] += int(nodes)
                if not complete:
                    state["complete"] = False
                if found and (best < state["val"] or (best == state["val"] and j < state["task"])):
                    state.update(val=int(best), task=j, set=np.array(witness, dtype=np.int64))

        tasks = _tasks(N, k, cfg.symmetry)
        if cfg.thread_count == 1:
            for j, prefix in enumerate(tasks):
                run(j, prefix)
        else:
            with ThreadPoolExecutor(max_workers=cfg.thread_count) as pool:
                list(pool.map(run, range(len(tasks)), tasks))

    members = state["set"]
    value = state["val"]
    if flipped:
        value, members = _flip(n, k, value), _complement_indices(N, members)
    status = PROVEN if state["complete"] else HEURISTIC
    if cfg.node_budget == 0 and k >= 1:
        status = HEURISTIC
    return SolveResult(n, l, int(value), VertexSubset(n, members), status, int(state["nodes"]),
                       time.perf_counter() - start, "bb")


# --- local search -------------------------------------------------------------

def random_start(N: int, l: int, seed: int) -> np.ndarray:
    """l distinct indices drawn uniformly: numpy PCG64(seed), Generator.choice
    without replacement. Both are stable across platforms."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return np.sort(rng.choice(N, size=l, replace=False)).astype(np.int64)


def _descend_from(n: int, start_set: np.ndarray, max_swaps: int) -> tuple[int, np.ndarray, int]:
    masks = vertex_masks(n)
    N = masks.size
    inw = np.zeros(N, dtype=bool)
    inw[start_set] = True
    deg = kernels.degrees_into(masks, masks[start_set])
    edges = int(deg[start_set].sum()) // 2
    edges, swaps = kernels.descend(masks, inw, deg, edges, max_swaps)
    return int(edges), np.flatnonzero(inw), int(swaps)


def local_search_r(n: int, l: int, cfg: SearchConfig = SearchConfig()) -> SolveResult:
    """Steepest-descent 1-swap search.

    Restart 0 starts from the block construction, restart i >= 1 from
    :func:`random_start` with seed ``cfg.seed + i``. Each descent applies the
    best improving (remove one, add one) swap, smallest indices first on
    ties, until none improves. The best restart wins; ties go to the
    lexicographically smallest witness.
    """
    start = time.perf_counter()
    N = _check_l(n, l)
    max_swaps = _UNLIMITED if cfg.node_budget is None else cfg.node_budget

    def one(r: int) -> tuple[int, np.ndarray, int]:
        if r == 0:
            plan = build_construction(n, l) if l else None
            init = plan.trimmed_set.indices if plan else np.zeros(0, dtype=np.int64)
        else:
            init = random_start(N, l, cfg.seed + r)
        return _descend_from(n, init, max_swaps)

    if cfg.thread_count > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=cfg.thread_count) as pool:
            runs = list(pool.map(one, range(cfg.restarts)))
    else:
        runs = [one(r) for r in range(cfg.restarts)]
    best = min(runs, key=lambda r: (r[0], tuple(r[1].tolist())))
    swaps = sum(r[2] for r in runs)
    witness = VertexSubset(n, best[1])
    return SolveResult(n, l, best[0], witness, HEURISTIC, swaps, time.perf_counter() - start, "local")


def verify_result(res: SolveResult) -> bool:
    """Witness size and recounted edges agree with the reported value."""
    return len(res.witness) == res.l and count_induced_edges(res.witness) == res.min_edges
