"""The graph G(n,3,1): vertices are 3-subsets of {1..n}, adjacent iff they share
exactly one element.

Vertices are indexed by colex rank. Each vertex also carries an n-bit mask, so
adjacency is ``popcount(mask_u & mask_v) == 1``; masks are uint64, which caps
materialized graphs at n <= 64. Formula-only quantities (:func:`graph_stats`)
work up to n = 1000.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .combinat import binomial, checked, iter_triples, rank_triple, triple_mask, unrank_triple

MAX_MASK_N = 64
# Packed adjacency rows are only built up to this many vertices (n <= 30).
MAX_BITROW_VERTICES = 4096


@dataclass(frozen=True)
class TripleVertex:
    elements: tuple[int, int, int]

    def __post_init__(self):
        a, b, c = self.elements
        if not (1 <= a < b < c):
            raise ValueError(f"triple must be strictly increasing positive integers: {self.elements}")

    @classmethod
    def of(cls, items: Iterable[int]) -> "TripleVertex":
        t = tuple(sorted(int(x) for x in items))
        if len(t) != 3 or len(set(t)) != 3:
            raise ValueError(f"need three distinct elements, got {t}")
        return cls(t)  # type: ignore[arg-type]

    @property
    def mask(self) -> int:
        return triple_mask(self.elements)

    def rank(self, n: int) -> int:
        return rank_triple(self.elements, n)


def adjacent(u: TripleVertex | Sequence[int], v: TripleVertex | Sequence[int]) -> bool:
    mu = u.mask if isinstance(u, TripleVertex) else triple_mask(u)
    mv = v.mask if isinstance(v, TripleVertex) else triple_mask(v)
    return (mu & mv).bit_count() == 1


@dataclass(frozen=True)
class GraphParams:
    n: int
    vertex_count: int
    degree: int
    edge_count: int

    def as_dict(self) -> dict:
        return {"n": self.n, "vertices": self.vertex_count, "degree": self.degree, "edges": self.edge_count}


def graph_stats(n: int) -> GraphParams:
    if n < 3:
        raise ValueError(f"G(n,3,1) needs n >= 3, got {n}")
    vertices = binomial(n, 3)
    degree = 3 * binomial(n - 3, 2)
    return GraphParams(n, vertices, degree, checked(degree * vertices // 2))


def _require_mask_n(n: int) -> None:
    if not 3 <= n <= MAX_MASK_N:
        raise ValueError(f"materialized graph needs 3 <= n <= {MAX_MASK_N}, got {n}")


@lru_cache(maxsize=None)
def vertex_triples(n: int) -> np.ndarray:
    """(C(n,3), 3) array of 1-based triples in colex order. Read-only."""
    _require_mask_n(n)
    arr = np.array(list(iter_triples(n)), dtype=np.int64).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def vertex_masks(n: int) -> np.ndarray:
    t = vertex_triples(n) - 1
    one = np.uint64(1)
    masks = (one << t[:, 0].astype(np.uint64)) | (one << t[:, 1].astype(np.uint64)) | (one << t[:, 2].astype(np.uint64))
    masks.setflags(write=False)
    return masks


@lru_cache(maxsize=None)
def adjacency_bitrows(n: int) -> np.ndarray:
    """Packed adjacency: bit v of row u (little-endian words) set iff u ~ v."""
    masks = vertex_masks(n)
    N = masks.size
    if N > MAX_BITROW_VERTICES:
        raise ValueError(f"C({n},3)={N} exceeds {MAX_BITROW_VERTICES}; bitrows not materialized")
    x = masks[:, None] & masks[None, :]
    dense = (x != 0) & ((x & (x - np.uint64(1))) == 0)
    words = (N + 63) // 64
    packed = np.packbits(dense, axis=1, bitorder="little")
    padded = np.zeros((N, words * 8), dtype=np.uint8)
    padded[:, :packed.shape[1]] = packed
    bits = padded.view("<u8").astype(np.uint64)
    bits.setflags(write=False)
    return bits


class VertexSubset:
    """A set of vertices of G(n,3,1), stored as sorted colex indices."""

    __slots__ = ("n", "indices")

    def __init__(self, n: int, indices: Iterable[int] = ()):
        total = binomial(n, 3)
        idx = np.unique(np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64))
        if idx.size and (idx[0] < 0 or idx[-1] >= total):
            raise ValueError(f"vertex index out of range 0..{total - 1}")
        idx.setflags(write=False)
        self.n = n
        self.indices = idx

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "VertexSubset":
        return cls(n, [rank_triple(sorted(t), n) for t in triples])

    @classmethod
    def full(cls, n: int) -> "VertexSubset":
        return cls(n, np.arange(binomial(n, 3)))

    @classmethod
    def from_mask(cls, n: int, member: np.ndarray) -> "VertexSubset":
        return cls(n, np.flatnonzero(member))

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return (int(i) for i in self.indices)

    def __contains__(self, i: object) -> bool:
        pos = np.searchsorted(self.indices, i)
        return bool(pos < self.indices.size and self.indices[pos] == i)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSubset) and other.n == self.n and np.array_equal(other.indices, self.indices)

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"VertexSubset(n={self.n}, size={len(self)})"

    def triples(self) -> list[tuple[int, int, int]]:
        if self.n <= MAX_MASK_N:
            return [tuple(int(x) for x in row) for row in vertex_triples(self.n)[self.indices]]
        return [unrank_triple(int(i), self.n) for i in self.indices]

    def masks(self) -> np.ndarray:
        return vertex_masks(self.n)[self.indices]

    def member_mask(self) -> np.ndarray:
        out = np.zeros(binomial(self.n, 3), dtype=bool)
        out[self.indices] = True
        return out

    def complement(self) -> "VertexSubset":
        return VertexSubset.from_mask(self.n, ~self.member_mask())

    @property
    def bitset(self) -> int:
        value = 0
        for i in self.indices:
            value |= 1 << int(i)
        return value

    # serialization: JSON triples or compact hex bitset (bit i <=> vertex i)
    def to_json(self) -> list[list[int]]:
        return [list(t) for t in self.triples()]

    def to_hex(self) -> str:
        return format(self.bitset, "x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "VertexSubset":
        value = int(text.removeprefix("0x"), 16)
        idx = [i for i in range(value.bit_length()) if value >> i & 1]
        return cls(n, idx)


def write_subset(path: str | Path, subset: VertexSubset, form: str = "json") -> None:
    """Write a subset file: a JSON array of triples, or {"n":..,"hex":..}."""
    if form == "json":
        payload: object = subset.to_json()
    elif form == "hex":
        payload = {"n": subset.n, "hex": subset.to_hex()}
    else:
        raise ValueError(f"unknown subset format {form!r}")
    Path(path).write_text(json.dumps(payload) + "\n")


def read_subset(path: str | Path, n: int | None = None) -> VertexSubset:
    return parse_subset(json.loads(Path(path).read_text()), n)


def parse_subset(payload: object, n: int | None = None) -> VertexSubset:
    if isinstance(payload, dict):
        return VertexSubset.from_hex(int(payload.get("n", n)), payload["hex"])
    triples = [list(t) for t in payload]  # type: ignore[union-attr]
    if n is None:
        n = max((max(t) for t in triples), default=3)
    return VertexSubset.from_triples(n, triples)


def count_induced_edges(W: VertexSubset, method: str = "auto") -> int:
    """Number of edges with both ends in ``W``.

    ``direct`` counts pairs inside W. ``dense`` counts inside the complement W1
    and uses |E(W)| = |E_n| - d_n |W1| + |E(W1)|. ``auto`` picks dense when W
    holds more than half the vertices.
    """
    params = graph_stats(W.n)
    if method == "auto":
        method = "dense" if 2 * len(W) > params.vertex_count else "direct"
    if method == "direct":
        return int(kernels.count_pairs_within(W.masks()))
    if method == "dense":
        W1 = W.complement()
        inner = int(kernels.count_pairs_within(W1.masks()))
        return params.edge_count - params.degree * len(W1) + inner
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class EdgeCountReport:
    n: int
    size: int
    edges_within_W: int
    edges_within_complement: int
    edges_crossing: int
    total_edges: int
    degree: int

    @property
    def identity_holds(self) -> bool:
        """|E(W)| = |E_n| - |E(W1)| - |E1|."""
        return self.edges_within_W == self.total_edges - self.edges_within_complement - self.edges_crossing

    @property
    def inequality_holds(self) -> bool:
        """|E(W1)| + |E1| <= d_n |W1|."""
        complement_size = binomial(self.n, 3) - self.size
        return self.edges_within_complement + self.edges_crossing <= self.degree * complement_size

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "edges_within_W": self.edges_within_W,
            "edges_within_complement": self.edges_within_complement,
            "edges_crossing": self.edges_crossing,
            "total_edges": self.total_edges,
            "identity_holds": self.identity_holds,
            "inequality_holds": self.inequality_holds,
        }


def complement_accounting(W: VertexSubset) -> EdgeCountReport:
    """Split E_n into edges inside W, inside its complement, and crossing.

    All three parts are counted pairwise, independently of each other, so the
    report's identity check is a real test rather than a rearrangement.
    """
    params = graph_stats(W.n)
    inside = W.masks()
    outside = W.complement().masks()
    return EdgeCountReport(
        n=W.n,
        size=len(W),
        edges_within_W=int(kernels.count_pairs_within(inside)),
        edges_within_complement=int(kernels.count_pairs_within(outside)),
        edges_crossing=int(kernels.count_pairs_between(inside, outside)),
        total_edges=params.edge_count,
        degree=params.degree,
    )
