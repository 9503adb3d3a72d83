"""Independent reference computations: plain itertools and frozensets only."""

from itertools import combinations


def triples(n):
    return [frozenset(c) for c in combinations(range(1, n + 1), 3)]


def edges(W):
    return sum(1 for a, b in combinations(W, 2) if len(a & b) == 1)


def crossing(A, B):
    return sum(1 for a in A for b in B if len(a & b) == 1)


def min_edges(n, l):
    return min(edges(W) for W in combinations(triples(n), l))
