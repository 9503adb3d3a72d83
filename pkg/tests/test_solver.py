import pytest

from g31.bounds import eval_T3
from g31.combinat import binomial
from g31.construction import build_construction
from g31.graph import count_induced_edges
from g31.solver import (HEURISTIC, ORACLE, PROVEN, BudgetRefusal, SearchConfig, branch_and_bound_r, brute_force_r,
                        enumeration_size, local_search_r, random_start, verify_result)

from oracles import min_edges

# Frozen from the pure-itertools oracle (tests/oracles.py), full l range.
R5 = [0, 0, 0, 0, 0, 2, 3, 6, 9, 12, 15]
R6 = [0, 0, 0, 0, 0, 2, 3, 6, 9, 12, 15, 21, 27, 33, 39, 47, 54, 63, 72, 81, 90]
# Frozen from proven branch and bound; l <= 8 and l >= 27 also match the oracle.
R7 = [0, 0, 0, 0, 0, 0, 3, 6, 9, 12, 15, 21, 27, 33, 39, 45, 54, 63, 72, 81, 90,
      102, 114, 126, 138, 150, 165, 180, 195, 210, 225, 243, 261, 279, 297, 315]


def test_oracle_examples():
    for l in range(5):
        assert brute_force_r(5, l).min_edges == 0
    assert brute_force_r(5, 10).min_edges == 15
    r = brute_force_r(5, 5)
    assert r.min_edges == 2 and r.status == ORACLE and r.nodes_explored == 252


def test_pure_python_oracle_small():
    for l in range(11):
        assert min_edges(5, l) == R5[l]


def test_oracle_tables(oracle_tables):
    assert [oracle_tables[5][l].min_edges for l in range(11)] == R5
    assert [oracle_tables[6][l].min_edges for l in range(21)] == R6
    for l, res in oracle_tables[7].items():
        assert res.min_edges == R7[l]
        assert verify_result(res)


def test_oracle_refuses_large():
    with pytest.raises(BudgetRefusal) as err:
        brute_force_r(8, 20)
    assert err.value.size == enumeration_size(8, 20) == binomial(56, 20)
    assert enumeration_size(7, 30) == binomial(35, 5)


def test_bb_matches_oracle(bb_tables, oracle_tables):
    for n in (5, 6, 7):
        for l, ref in oracle_tables[n].items():
            got = bb_tables[n][l]
            assert got.min_edges == ref.min_edges, (n, l)
            assert got.status == PROVEN
    assert [r.min_edges for r in bb_tables[7]] == R7


def test_bb_results_verify(bb_tables):
    for table in bb_tables.values():
        for res in table:
            assert verify_result(res)


def test_zero_law(bb_tables, brute_alpha):
    for n in (5, 6, 7):
        a = brute_alpha[n][0]
        assert all((r.min_edges == 0) == (r.l <= a) for r in bb_tables[n])
    assert bb_tables[7][brute_alpha[7][0] + 1].min_edges >= 1


def test_monotone_in_l(bb_tables):
    for table in bb_tables.values():
        vals = [r.min_edges for r in table]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_construction_is_upper_bound(bb_tables):
    for n, table in bb_tables.items():
        for res in table[1:]:
            assert build_construction(n, res.l).actual_edges >= res.min_edges


def test_bb_without_symmetry():
    for l in (5, 9, 13):
        assert branch_and_bound_r(6, l, SearchConfig(symmetry=False)).min_edges == R6[l]


def test_bb_deterministic_across_threads():
    ref = branch_and_bound_r(7, 12)
    for threads in (2, 4):
        got = branch_and_bound_r(7, 12, SearchConfig(thread_count=threads))
        assert (got.min_edges, got.witness) == (ref.min_edges, ref.witness)
    assert branch_and_bound_r(7, 12).witness == ref.witness


def test_zero_budget_returns_incumbent():
    for n, l in ((7, 12), (6, 9), (7, 30)):
        res = branch_and_bound_r(n, l, SearchConfig(node_budget=0))
        assert res.status == HEURISTIC and res.nodes_explored == 0
        assert verify_result(res)
    assert branch_and_bound_r(7, 12, SearchConfig(node_budget=0)).min_edges == build_construction(7, 12).actual_edges


def test_small_budget_is_heuristic():
    res = branch_and_bound_r(8, 20, SearchConfig(node_budget=50))
    assert res.status == HEURISTIC and verify_result(res)


def test_bb_rejects_large_graph():
    with pytest.raises(ValueError):
        branch_and_bound_r(31, 10)


def test_local_search_finds_optimum_n5():
    res = local_search_r(5, 5, SearchConfig(restarts=20, seed=0))
    assert res.min_edges == 2 and res.status == HEURISTIC and verify_result(res)


@pytest.mark.parametrize("n", [11, 12, 14, 16])
def test_local_search_sandwich(n):
    N = binomial(n, 3)
    for l in range(0, N + 1, max(1, N // 12)):
        res = local_search_r(n, l, SearchConfig(restarts=2, seed=1))
        assert verify_result(res)
        assert eval_T3(4, n, l).value <= res.min_edges
        if l:
            assert res.min_edges <= build_construction(n, l).actual_edges


def test_local_search_deterministic():
    cfg = SearchConfig(restarts=6, seed=42)
    a = local_search_r(12, 100, cfg)
    b = local_search_r(12, 100, SearchConfig(restarts=6, seed=42, thread_count=3))
    c = local_search_r(12, 100, cfg)
    assert a.min_edges == b.min_edges == c.min_edges
    assert a.witness == b.witness == c.witness


def test_random_start_reproducible():
    a = random_start(100, 10, 7)
    assert a.tolist() == random_start(100, 10, 7).tolist()
    assert len(set(a.tolist())) == 10 and a.tolist() == sorted(a.tolist())


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(node_budget=-1)
    with pytest.raises(ValueError):
        SearchConfig(time_budget=0)
    with pytest.raises(ValueError):
        SearchConfig(thread_count=0)


def test_solve_result_dict():
    d = brute_force_r(5, 5).as_dict()
    assert d["min_edges"] == 2 and len(d["witness"]) == 5
    assert count_induced_edges(brute_force_r(5, 5).witness) == 2


def test_l_range_checked():
    with pytest.raises(ValueError):
        brute_force_r(5, 11)
    with pytest.raises(ValueError):
        local_search_r(5, -1)
