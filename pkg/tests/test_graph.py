import json
import tempfile
import random
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g31.combinat import binomial
from g31.graph import (TripleVertex, VertexSubset, adjacency_bitrows, adjacent, complement_accounting,
                       count_induced_edges, graph_stats, parse_subset, read_subset, vertex_masks, write_subset)

from oracles import crossing, edges, triples


def test_adjacency_examples():
    assert adjacent(TripleVertex.of([1, 2, 3]), TripleVertex.of([1, 4, 5]))
    assert not adjacent((1, 2, 3), (1, 2, 4))
    assert not adjacent((1, 2, 3), (4, 5, 6))
    assert not adjacent((1, 2, 3), (1, 2, 3))


def test_triple_vertex_validation():
    v = TripleVertex.of([3, 1, 2])
    assert v.elements == (1, 2, 3)
    assert v.mask == 0b111
    assert bin(v.mask).count("1") == 3
    with pytest.raises(ValueError):
        TripleVertex.of([1, 1, 2])


@pytest.mark.parametrize("n,v,d,e", [(6, 20, 9, 90), (5, 10, 3, 15), (20, 1140, 408, 232560)])
def test_graph_stats(n, v, d, e):
    p = graph_stats(n)
    assert (p.vertex_count, p.degree, p.edge_count) == (v, d, e)


def test_graph_stats_n20_matches_pair_enumeration():
    # frozen from the itertools oracle (all 649,230 pairs of 3-subsets of 1..20)
    assert graph_stats(20).edge_count == 232560
    assert edges(triples(9)) == graph_stats(9).edge_count


def test_graph_stats_rejects_tiny():
    with pytest.raises(ValueError):
        graph_stats(2)
    assert graph_stats(3).edge_count == 0


@pytest.mark.parametrize("n", range(5, 13))
def test_regularity(n):
    bits = adjacency_bitrows(n)
    deg = np.array([sum(int(w).bit_count() for w in row) for row in bits])
    assert (deg == graph_stats(n).degree).all()


def test_bitrows_match_masks():
    n = 7
    masks = vertex_masks(n)
    bits = adjacency_bitrows(n)
    for u in range(masks.size):
        for v in range(masks.size):
            bit = int(bits[u, v >> 6]) >> (v & 63) & 1
            assert bit == (int(masks[u] & masks[v]).bit_count() == 1)


def test_count_examples():
    assert count_induced_edges(VertexSubset.full(6)) == 90
    W = VertexSubset.from_triples(6, [[1, 2, 3], [1, 4, 5], [2, 4, 6]])
    assert count_induced_edges(W) == 3
    star = VertexSubset.from_triples(6, [[1, 2, x] for x in range(3, 7)])
    assert count_induced_edges(star) == 0
    assert count_induced_edges(VertexSubset(6)) == 0


@pytest.mark.parametrize("n", range(7, 13))
def test_direct_and_dense_paths_agree(n):
    rng = np.random.default_rng(n)
    N = binomial(n, 3)
    for _ in range(200):
        W = VertexSubset(n, rng.choice(N, size=int(rng.integers(0, N + 1)), replace=False))
        assert count_induced_edges(W, "direct") == count_induced_edges(W, "dense")


def test_accounting_edge_cases():
    rep = complement_accounting(VertexSubset.full(8))
    assert (rep.edges_within_W, rep.edges_within_complement, rep.edges_crossing) == (graph_stats(8).edge_count, 0, 0)
    rep = complement_accounting(VertexSubset(8))
    assert (rep.edges_within_W, rep.edges_within_complement, rep.edges_crossing) == (0, graph_stats(8).edge_count, 0)


def test_accounting_against_oracle_n8():
    rng = random.Random(8)
    V = triples(8)
    for _ in range(500):
        chosen = rng.sample(V, rng.randint(0, 56))
        W = VertexSubset.from_triples(8, [sorted(t) for t in chosen])
        rep = complement_accounting(W)
        inside = chosen
        outside = [t for t in V if t not in set(chosen)]
        assert rep.edges_within_W == edges(inside) == count_induced_edges(W)
        assert rep.edges_within_complement == edges(outside)
        assert rep.edges_crossing == crossing(inside, outside)
        assert rep.identity_holds and rep.inequality_holds
        assert rep.edges_within_W + rep.edges_within_complement + rep.edges_crossing == 840


@settings(max_examples=20, deadline=None)
@given(st.integers(6, 10), st.randoms(use_true_random=False))
def test_permutation_symmetry(n, rnd):
    N = binomial(n, 3)
    W = VertexSubset(n, rnd.sample(range(N), rnd.randint(0, N)))
    base = count_induced_edges(W)
    perm = list(range(1, n + 1))
    rnd.shuffle(perm)
    moved = VertexSubset.from_triples(n, [[perm[x - 1] for x in t] for t in W.triples()])
    assert count_induced_edges(moved) == base


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12), st.randoms(use_true_random=False))
def test_serialization_round_trip(n, rnd):
    N = binomial(n, 3)
    W = VertexSubset(n, rnd.sample(range(N), rnd.randint(0, N)))
    assert parse_subset(json.loads(json.dumps(W.to_json())), n) == W
    assert VertexSubset.from_hex(n, W.to_hex()) == W
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "w.json"
        for form in ("json", "hex"):
            write_subset(path, W, form)
            assert read_subset(path, n) == W


def test_subset_rejects_out_of_range():
    with pytest.raises(ValueError):
        VertexSubset(5, [10])
    with pytest.raises(ValueError):
        vertex_masks(65)
