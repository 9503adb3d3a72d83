"""Block construction: an explicit l-vertex set with few induced edges.

Split 1..n into floor(n/t) consecutive blocks of width t, the smallest t with
C(t,3) * floor(n/t) >= l, and take every triple inside a block. Two triples
from different blocks are disjoint, so edges never cross blocks and each block
contributes the edge count of a complete G(t,3,1).

The block family may hold more than l vertices. Excess vertices are removed
from the last block first (then the one before it, if needed), always taking
the vertex of highest current induced degree and breaking ties by the larger
index. Removal never adds edges, so the trimmed set stays below the
untrimmed count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .bounds import ASYMPTOTIC, EXACT, UPPER, BoundEstimate
from .combinat import binomial, rank_triple
from .graph import MAX_MASK_N, VertexSubset, count_induced_edges, vertex_masks


@dataclass(frozen=True)
class ConstructionPlan:
    n: int
    l: int
    t: int
    num_blocks: int
    blocks: tuple[tuple[int, int], ...]  # inclusive element ranges
    raw_size: int
    predicted_edges: int
    trimmed_set: Optional[VertexSubset] = None
    actual_edges: Optional[int] = None

    def as_dict(self, include_set: bool = False) -> dict:
        out = {
            "n": self.n,
            "l": self.l,
            "t": self.t,
            "num_blocks": self.num_blocks,
            "blocks": [list(b) for b in self.blocks],
            "raw_size": self.raw_size,
            "predicted_edges": self.predicted_edges,
            "actual_edges": self.actual_edges,
        }
        if include_set and self.trimmed_set is not None:
            out["set"] = self.trimmed_set.to_json()
        return out


def _block_total(t: int, n: int) -> int:
    return binomial(t, 3) * (n // t)


def select_block_width(n: int, l: int) -> int:
    """Smallest t in 3..n with C(t,3) * floor(n/t) >= l."""
    total = binomial(n, 3)
    if not 1 <= l <= total:
        raise ValueError(f"l={l} outside 1..C({n},3)={total}")
    for t in range(3, n + 1):
        if _block_total(t, n) >= l:
            return t
    raise AssertionError("unreachable: t = n always covers l <= C(n,3)")


def block_edges(t: int) -> int:
    """Edges of G(t,3,1): C(t,3) * 3 C(t-3,2) / 2."""
    return binomial(t, 3) * 3 * binomial(t - 3, 2) // 2


def plan_construction(n: int, l: int) -> ConstructionPlan:
    """Block layout and untrimmed edge count only; no vertex set is built."""
    t = select_block_width(n, l)
    k = n // t
    blocks = tuple((i * t + 1, (i + 1) * t) for i in range(k))
    return ConstructionPlan(n, l, t, k, blocks, _block_total(t, n), k * block_edges(t))


def block_vertices(n: int, lo: int, hi: int) -> np.ndarray:
    """Colex indices of all triples inside lo..hi, ascending."""
    return np.array(sorted(rank_triple(c, n) for c in combinations(range(lo, hi + 1), 3)), dtype=np.int64)


def _trim_block(n: int, members: np.ndarray, remove: int) -> np.ndarray:
    masks = vertex_masks(n)[members]
    deg = kernels.degrees_into(masks, masks)
    alive = np.ones(members.size, dtype=bool)
    one = np.uint64(1)
    for _ in range(remove):
        # highest degree, then largest index: scan reversed and take first max
        cand = np.where(alive, deg, -1)
        j = members.size - 1 - int(np.argmax(cand[::-1]))
        alive[j] = False
        x = masks & masks[j]
        deg -= ((x != 0) & ((x & (x - one)) == 0)).astype(np.int64)
    return members[alive]


def build_construction(n: int, l: int, materialize: bool = True) -> ConstructionPlan:
    """Full construction including the trimmed l-set and its measured edge count.

    With ``materialize=False`` (or n beyond the mask limit) only the plan is
    returned.
    """
    plan = plan_construction(n, l)
    if not materialize or n > MAX_MASK_N:
        return plan
    excess = plan.raw_size - l
    parts = []
    for lo, hi in reversed(plan.blocks):
        members = block_vertices(n, lo, hi)
        take = min(excess, members.size)
        if take == members.size:
            members = members[:0]
        elif take:
            members = _trim_block(n, members, take)
        excess -= take
        parts.append(members)
    subset = VertexSubset(n, np.concatenate(parts))
    return ConstructionPlan(plan.n, plan.l, plan.t, plan.num_blocks, plan.blocks, plan.raw_size,
                            plan.predicted_edges, subset, count_induced_edges(subset))


def predicted_upper_bound(n: int, l: int) -> list[BoundEstimate]:
    """Exact untrimmed construction count (upper) and the 9 l^2 / (2n) reference."""
    plan = plan_construction(n, l)
    return [
        BoundEstimate(plan.predicted_edges, UPPER, EXACT, "T3.1"),
        BoundEstimate(Fraction(9 * l * l, 2 * n), UPPER, ASYMPTOTIC, "T3.1"),
    ]
