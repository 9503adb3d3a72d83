import os
import subprocess
import sys

import numpy as np
import pytest

from g31 import kernels
from g31.combinat import binomial
from g31.graph import adjacency_bitrows, vertex_masks

nb = kernels.numba_backend
npk = kernels.numpy_backend
needs_numba = pytest.mark.skipif(nb is None, reason="numba backend unavailable")


def _rows(n):
    return adjacency_bitrows(n), binomial(n, 3)


@needs_numba
@pytest.mark.parametrize("n", [5, 6, 7, 9])
def test_pair_counts_agree(n):
    masks = vertex_masks(n)
    rng = np.random.default_rng(n)
    for _ in range(20):
        a = masks[rng.random(masks.size) < 0.5]
        b = masks[rng.random(masks.size) < 0.3]
        assert nb.count_pairs_within(a) == npk.count_pairs_within(a)
        assert nb.count_pairs_between(a, b) == npk.count_pairs_between(a, b)
        assert np.array_equal(nb.degrees_into(masks, a), npk.degrees_into(masks, a))


@needs_numba
@pytest.mark.parametrize("n,k", [(5, 3), (5, 5), (6, 4), (6, 7)])
def test_brute_force_agrees(n, k):
    bits, N = _rows(n)
    a = nb.brute_min_edges(bits, N, k)
    b = npk.brute_min_edges(bits, N, k)
    assert a[0] == b[0] and a[2] == b[2]
    assert list(a[1]) == list(b[1])


@needs_numba
@pytest.mark.parametrize("n", [5, 6, 7])
def test_forced_table_agrees(n):
    bits, N = _rows(n)
    assert np.array_equal(nb.forced_edges_table(bits, N, N // 2), npk.forced_edges_table(bits, N, N // 2))


@needs_numba
@pytest.mark.parametrize("n,k", [(6, 6), (6, 9), (7, 8)])
def test_bb_task_agrees(n, k):
    bits, N = _rows(n)
    forced = npk.forced_edges_table(bits, N, k)
    for prefix in ([0, 1], [0, 5], [2]):
        p = np.array(prefix, dtype=np.int64)
        a = nb.bb_task(bits, N, k, forced, p, 10**6, True, 2**62)
        b = npk.bb_task(bits, N, k, forced, p, 10**6, True, 2**62)
        assert (a[0], a[1], list(a[2]), a[3], a[4]) == (b[0], b[1], list(b[2]), b[3], b[4])


@needs_numba
@pytest.mark.parametrize("n,l", [(7, 12), (9, 30), (11, 60)])
def test_descend_agrees(n, l):
    masks = vertex_masks(n)
    rng = np.random.default_rng(l)
    start = rng.choice(masks.size, l, replace=False)
    out = []
    for mod in (nb, npk):
        inw = np.zeros(masks.size, dtype=bool)
        inw[start] = True
        deg = mod.degrees_into(masks, masks[start])
        e = int(deg[start].sum()) // 2
        edges, swaps = mod.descend(masks, inw, deg, e, 2**62)
        out.append((int(edges), int(swaps), np.flatnonzero(inw).tolist()))
    assert out[0] == out[1]


def test_backend_name_consistent():
    assert kernels.BACKEND in ("numba", "numpy")
    assert (kernels.BACKEND == "numba") == (kernels.backend is nb and nb is not None)


def test_env_flag_selects_numpy():
    env = dict(os.environ, G31_DISABLE_NUMBA="1")
    code = "from g31 import kernels, graph; from g31.solver import brute_force_r; " \
           "print(kernels.BACKEND, brute_force_r(5, 5).min_edges)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "2"]
