"""Time each hot kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Numba functions are called once before timing so compilation is excluded.
Results from both backends are compared and must match.
"""

import argparse
import time

import numpy as np

from g31 import kernels
from g31.combinat import binomial
from g31.graph import adjacency_bitrows, vertex_masks


def cases():
    masks20 = vertex_masks(20)
    rng = np.random.default_rng(0)
    half = masks20[rng.random(masks20.size) < 0.5]
    bits6, N6 = adjacency_bitrows(6), binomial(6, 3)
    bits7, N7 = adjacency_bitrows(7), binomial(7, 3)
    forced7 = kernels.numpy_backend.forced_edges_table(bits7, N7, 12)
    masks12 = vertex_masks(12)
    start = rng.choice(masks12.size, 80, replace=False)

    def descend(mod):
        inw = np.zeros(masks12.size, dtype=bool)
        inw[start] = True
        deg = mod.degrees_into(masks12, masks12[start])
        return mod.descend(masks12, inw, deg, int(deg[start].sum()) // 2, 2**62)

    return [
        ("count_pairs_within n=20 |W|~570", lambda m: m.count_pairs_within(half)),
        ("degrees_into n=20", lambda m: m.degrees_into(masks20, half)),
        ("brute_min_edges n=6 l=7", lambda m: m.brute_min_edges(bits6, N6, 7)[0]),
        ("forced_edges_table n=7", lambda m: m.forced_edges_table(bits7, N7, 12)),
        ("bb_task n=7 l=12 prefix [0,1]",
         lambda m: m.bb_task(bits7, N7, 12, forced7, np.array([0, 1], dtype=np.int64), 10**6, True, 2**62)[0]),
        ("descend n=12 l=80", descend),
    ]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    nb, npk = kernels.numba_backend, kernels.numpy_backend
    print(f"{'kernel':38s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, call in cases():
        t_np, r_np = best_time(lambda: call(npk), args.repeat)
        if nb is None:
            print(f"{name:38s} {t_np:10.4f} {'n/a':>10s} {'':>8s}")
            continue
        call(nb)  # compile
        t_nb, r_nb = best_time(lambda: call(nb), args.repeat)
        assert same(r_np, r_nb), name
        print(f"{name:38s} {t_np:10.4f} {t_nb:10.4f} {t_np / max(t_nb, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
