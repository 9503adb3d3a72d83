"""Independent sets of G(n,3,1): exact alpha, canonical families, decomposition.

An independent family of triples has every pairwise intersection of size 0 or 2.
Three structured kinds of such families exist:

* ``type1``: at least 3 triples through a common pair {i, j};
* ``type2``: at least 2 triples inside a common 4-set;
* ``type3``: pairwise disjoint triples.

Any independent set splits into families of these kinds with pairwise disjoint
supports (support = union of the triples). :func:`decompose` finds such a
split and re-validates it before returning.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np

from .combinat import binomial
from .graph import VertexSubset, adjacency_bitrows, count_induced_edges, vertex_masks

TYPE1, TYPE2, TYPE3 = "type1", "type2", "type3"


def is_independent(W: VertexSubset) -> bool:
    return count_induced_edges(W) == 0


def _neighbor_ints(n: int) -> list[int]:
    """Adjacency rows as Python int bitsets."""
    bits = adjacency_bitrows(n)
    rows = []
    for row in bits:
        value = 0
        for w, word in enumerate(row):
            value |= int(word) << (64 * w)
        rows.append(value)
    return rows


def _lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


def _members(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


# --- exhaustive oracles -------------------------------------------------------

def iter_independent_sets(n: int) -> Iterator[tuple[int, ...]]:
    """Every independent set (including the empty one), as sorted index tuples
    in lexicographic order."""
    nbr = _neighbor_ints(n)
    N = len(nbr)
    full = (1 << N) - 1

    def rec(chosen: list[int], allowed: int) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        rest = allowed
        while rest:
            v = _lowest(rest)
            rest &= rest - 1
            chosen.append(v)
            # only larger indices, and none adjacent to v
            yield from rec(chosen, rest & ~nbr[v])
            chosen.pop()

    yield from rec([], full)


def _subset_table_alpha(n: int) -> tuple[int, tuple[int, ...]]:
    """2^N subset scan (N = C(n,3) <= 20)."""
    masks = vertex_masks(n)
    N = masks.size
    nbr = np.array(_neighbor_ints(n), dtype=np.int64)
    ind = np.zeros(1 << N, dtype=bool)
    ind[0] = True
    for k in range(N):
        lo = np.arange(1 << k, dtype=np.int64)
        ind[(1 << k):(1 << (k + 1))] = ind[: 1 << k] & ((lo & nbr[k]) == 0)
    sizes = np.zeros(1 << N, dtype=np.int64)
    for k in range(N):
        sizes[(1 << k):(1 << (k + 1))] = sizes[: 1 << k] + 1
    sizes[~ind] = -1
    alpha = int(sizes.max())
    best = min(tuple(_members(int(s))) for s in np.flatnonzero(sizes == alpha))
    return alpha, best


def brute_force_alpha(n: int) -> tuple[int, VertexSubset]:
    """Independence number by exhaustion: a 2^N table for N <= 20, otherwise
    a scan over every independent set. Returns the lex-smallest maximum set."""
    N = binomial(n, 3)
    if N <= 20:
        alpha, best = _subset_table_alpha(n)
    else:
        alpha, best = 0, ()
        for s in iter_independent_sets(n):
            if len(s) > alpha:
                alpha, best = len(s), s
    return alpha, VertexSubset(n, best)


# --- branch and bound ---------------------------------------------------------

def _clique_cover(P: int, nbr: list[int]) -> int:
    """Greedy clique cover size of P; an upper bound on alpha(P)."""
    count = 0
    while P:
        v = _lowest(P)
        clique = 1 << v
        cand = P & nbr[v]
        while cand:
            u = _lowest(cand)
            clique |= 1 << u
            cand &= nbr[u] & ~(1 << u)
        P &= ~clique
        count += 1
    return count


class _Budget(Exception):
    pass


def _max_independent(P: int, nbr: list[int], target: int, best: int,
                     deadline: Optional[float], node_limit: Optional[int]) -> tuple[int, list[int], int, bool]:
    """Search P for an independent set larger than ``best`` (stop at ``target``).

    Branches on the vertex of highest degree inside P; prunes with the greedy
    clique cover. Returns (best_size, best_set, nodes, complete).
    """
    state = {"best": best, "set": None, "nodes": 0}

    def rec(size: int, P: int, chosen: list[int]) -> bool:
        state["nodes"] += 1
        if node_limit is not None and state["nodes"] > node_limit:
            raise _Budget
        if deadline is not None and state["nodes"] % 1024 == 0 and time.monotonic() > deadline:
            raise _Budget
        if P == 0:
            if size > state["best"]:
                state["best"], state["set"] = size, list(chosen)
            return state["best"] >= target
        if size + _clique_cover(P, nbr) <= state["best"]:
            return False
        members = _members(P)
        v = max(members, key=lambda x: ((nbr[x] & P).bit_count(), -x))
        chosen.append(v)
        if rec(size + 1, P & ~nbr[v] & ~(1 << v), chosen):
            return True
        chosen.pop()
        return rec(size, P & ~(1 << v), chosen)

    try:
        rec(0, P, [])
        complete = True
    except _Budget:
        complete = False
    return state["best"], sorted(state["set"] or []), state["nodes"], complete


@dataclass(frozen=True)
class IndependenceResult:
    n: int
    alpha: int
    witness: VertexSubset
    proven: bool
    nodes: int = 0

    def as_dict(self) -> dict:
        return {"n": self.n, "alpha": self.alpha, "proven": self.proven, "witness": self.witness.to_json()}


def _lex_smallest(alpha: int, nbr: list[int], N: int) -> list[int]:
    chosen: list[int] = []
    allowed = (1 << N) - 1
    for k in range(alpha):
        cand = allowed
        while cand:
            v = _lowest(cand)
            cand &= cand - 1
            rest = allowed & ~nbr[v] & ~((1 << (v + 1)) - 1)
            need = alpha - k - 1
            got, _, _, _ = _max_independent(rest, nbr, need, need - 1, None, None)
            if got >= need:
                chosen.append(v)
                allowed = rest
                break
    return chosen


def independence_number(n: int, budget: Optional[float] = None, node_budget: Optional[int] = None,
                        canonical: bool = True) -> IndependenceResult:
    """Exact alpha by branch and bound.

    ``budget`` is wall time in seconds. When a budget runs out the best set
    found so far is returned with ``proven=False``. With ``canonical`` the
    witness of a proven result is the lexicographically smallest maximum set.
    """
    nbr = _neighbor_ints(n)
    N = len(nbr)
    deadline = None if budget is None else time.monotonic() + budget
    # seed with a pair-star {1,2,x}: n - 2 independent triples
    seed = [i for i, t in enumerate(VertexSubset.full(n).triples()) if t[0] == 1 and t[1] == 2]
    best, found, nodes, complete = _max_independent((1 << N) - 1, nbr, N, len(seed), deadline, node_budget)
    witness = found if best > len(seed) else seed
    if complete and canonical:
        witness = _lex_smallest(best, nbr, N)
    return IndependenceResult(n, best, VertexSubset(n, witness), complete, nodes)


# --- families and decomposition -----------------------------------------------

@dataclass(frozen=True)
class FamilyType:
    kind: str
    parameters: tuple[int, ...] = ()

    def __post_init__(self):
        expected = {TYPE1: 2, TYPE2: 4, TYPE3: 0}
        if self.kind not in expected:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if len(self.parameters) != expected[self.kind] or len(set(self.parameters)) != len(self.parameters):
            raise ValueError(f"{self.kind} needs {expected[self.kind]} distinct parameters, got {self.parameters}")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "parameters": list(self.parameters)}


def generate_family(ft: FamilyType, n: int) -> VertexSubset:
    """The largest family of the given kind."""
    if any(not 1 <= p <= n for p in ft.parameters):
        raise ValueError(f"parameters {ft.parameters} outside 1..{n}")
    if ft.kind == TYPE1:
        i, j = ft.parameters
        triples = [(i, j, x) for x in range(1, n + 1) if x not in (i, j)]
    elif ft.kind == TYPE2:
        triples = list(combinations(sorted(ft.parameters), 3))
    else:
        triples = [(3 * k + 1, 3 * k + 2, 3 * k + 3) for k in range(n // 3)]
    return VertexSubset.from_triples(n, triples)


def family_matches(ft: FamilyType, triples: Sequence[Sequence[int]]) -> bool:
    sets = [frozenset(t) for t in triples]
    if ft.kind == TYPE1:
        pair = set(ft.parameters)
        return len(sets) >= 3 and all(pair <= s for s in sets)
    if ft.kind == TYPE2:
        quad = set(ft.parameters)
        return len(sets) >= 2 and all(s <= quad for s in sets)
    return all(not (a & b) for a, b in combinations(sets, 2))


@dataclass
class Decomposition:
    parts: list[tuple[FamilyType, VertexSubset]] = field(default_factory=list)
    supports: list[frozenset[int]] = field(default_factory=list)
    valid: bool = True
    error: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "error": self.error,
            "parts": [{**ft.as_dict(), "members": sub.to_json()} for ft, sub in self.parts],
            "supports": [sorted(s) for s in self.supports],
        }


def validate_decomposition(U: VertexSubset, parts: Sequence[tuple[FamilyType, VertexSubset]]) -> Optional[str]:
    """None when ``parts`` is a valid split of U, else a reason."""
    seen: set[int] = set()
    supports = []
    for ft, sub in parts:
        if seen & set(sub):
            return "parts overlap"
        seen |= set(sub)
        triples = sub.triples()
        if not family_matches(ft, triples):
            return f"part {triples} is not {ft.kind}"
        supports.append(frozenset(x for t in triples for x in t))
    if seen != set(U):
        return "parts do not cover the input"
    for a, b in combinations(supports, 2):
        if a & b:
            return "supports intersect"
    return None


def decompose(U: VertexSubset) -> Decomposition:
    """Split an independent set into type1/type2/type3 parts with disjoint supports.

    Triples sharing an element are grouped (for an independent set they share
    exactly two). Each group of 3+ with a common pair is type1; other groups of
    2+ live in a 4-set and are type2; singleton groups together form one type3
    part. A failure is reported in the result, never raised.
    """
    if not is_independent(U):
        return Decomposition(valid=False, error="input set is not independent")
    triples = U.triples()
    idx = list(U)
    parent = list(range(len(triples)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(len(triples)), 2):
        if set(triples[a]) & set(triples[b]):
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for a in range(len(triples)):
        groups.setdefault(find(a), []).append(a)

    parts: list[tuple[FamilyType, VertexSubset]] = []
    singles: list[int] = []
    for members in sorted(groups.values()):
        if len(members) == 1:
            singles.append(members[0])
            continue
        sets = [set(triples[a]) for a in members]
        core = set.intersection(*sets)
        support = set.union(*sets)
        if len(members) >= 3 and len(core) >= 2:
            ft = FamilyType(TYPE1, tuple(sorted(core))[:2])
        elif len(support) <= 4:
            quad = sorted(support)
            quad += [x for x in range(1, U.n + 1) if x not in support][: 4 - len(quad)]
            ft = FamilyType(TYPE2, tuple(sorted(quad)))
        else:
            return Decomposition(valid=False, error=f"group {[triples[a] for a in members]} fits no type")
        parts.append((ft, VertexSubset(U.n, [idx[a] for a in members])))
    if singles:
        parts.append((FamilyType(TYPE3), VertexSubset(U.n, [idx[a] for a in singles])))

    error = validate_decomposition(U, parts)
    supports = [frozenset(x for t in sub.triples() for x in t) for _, sub in parts]
    return Decomposition(parts, supports, error is None, error)


# The operation name used by the CLI and tests.
decompose_claim1 = decompose
