"""Pure-numpy implementations of the hot loops, same signatures as ``_numba``.

Used when numba is missing or disabled via ``G31_DISABLE_NUMBA``. Chunk sizes
keep peak temporaries near a few tens of megabytes.
"""

from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)
_BIG = 2**62
_CHUNK = 1 << 22


def _single_bit(x: np.ndarray) -> np.ndarray:
    return (x != 0) & ((x & (x - _ONE)) == 0)


def unpack_bits(bits: np.ndarray, N: int) -> np.ndarray:
    as_bytes = bits.astype("<u8").view(np.uint8).reshape(bits.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :N].astype(bool)


def count_pairs_between(a: np.ndarray, b: np.ndarray) -> int:
    if a.size == 0 or b.size == 0:
        return 0
    step = max(1, _CHUNK // b.size)
    total = 0
    for i in range(0, a.size, step):
        total += int(_single_bit(a[i:i + step, None] & b[None, :]).sum())
    return total


def count_pairs_within(masks: np.ndarray) -> int:
    m = masks.size
    if m < 2:
        return 0
    step = max(1, _CHUNK // m)
    total = 0
    for i in range(0, m, step):
        block = _single_bit(masks[i:i + step, None] & masks[None, :])
        total += int(block.sum())
    # each unordered pair counted twice; diagonal never qualifies (3 bits)
    return total // 2


def degrees_into(all_masks: np.ndarray, members: np.ndarray) -> np.ndarray:
    out = np.zeros(all_masks.size, dtype=np.int64)
    if members.size == 0:
        return out
    step = max(1, _CHUNK // members.size)
    for i in range(0, all_masks.size, step):
        out[i:i + step] = _single_bit(all_masks[i:i + step, None] & members[None, :]).sum(axis=1)
    return out


def _extend(rows: np.ndarray, counts: np.ndarray, adj: np.ndarray, N: int):
    last = rows[:, -1]
    reps = N - 1 - last
    keep = reps > 0
    rows, counts, last, reps = rows[keep], counts[keep], last[keep], reps[keep]
    total = int(reps.sum())
    parent = np.repeat(np.arange(rows.shape[0]), reps)
    offset = np.arange(total) - np.repeat(np.cumsum(reps) - reps, reps)
    new = last[parent] + 1 + offset
    base = rows[parent]
    add = adj[base, new[:, None]].sum(axis=1)
    return np.column_stack([base, new.astype(rows.dtype)]), counts[parent] + add


def brute_min_edges(bits: np.ndarray, N: int, l: int):
    adj = unpack_bits(bits, N)
    if l == 0:
        return 0, np.zeros(0, dtype=np.int64), 1
    best = _BIG
    best_idx = None
    count = 0
    # chunk by the first element; inside, grow all combinations level by level
    for first in range(N - l + 1):
        rows = np.array([[first]], dtype=np.int16)
        counts = np.zeros(1, dtype=np.int64)
        for _ in range(l - 1):
            rows, counts = _extend(rows, counts, adj, N)
            # drop rows that cannot be completed to size l
            need = l - rows.shape[1]
            ok = rows[:, -1] <= N - 1 - need
            rows, counts = rows[ok], counts[ok]
        count += rows.shape[0]
        if rows.shape[0] == 0:
            continue
        k = int(np.argmin(counts))  # first argmin == lex smallest in this chunk
        if counts[k] < best:
            best = int(counts[k])
            best_idx = rows[k].astype(np.int64)
    return best, best_idx, count


def clique_cover_sizes(bits: np.ndarray, N: int, s: int) -> np.ndarray:
    adj = unpack_bits(bits, N)
    common: list[np.ndarray] = []
    sizes: list[int] = []
    for v in range(s, N):
        for c, cm in enumerate(common):
            if cm[v]:
                cm &= adj[v]
                sizes[c] += 1
                break
        else:
            common.append(adj[v].copy())
            sizes.append(1)
    return np.array(sizes, dtype=np.int64)


def forced_edges_table(bits: np.ndarray, N: int, lmax: int) -> np.ndarray:
    table = np.full((N + 1, lmax + 1), _BIG, dtype=np.int64)
    table[N, 0] = 0
    for s in range(N):
        sizes = clique_cover_sizes(bits, N, s)
        marginals = np.sort(np.concatenate([np.arange(z) for z in sizes]))
        upto = min(lmax, N - s)
        table[s, 0] = 0
        table[s, 1:upto + 1] = np.cumsum(marginals[:upto])
    return table


def bb_task(bits, N, l, forced, prefix, inc_val, tie_prune, node_budget):
    adj = unpack_bits(bits, N).astype(np.int64)
    prefix = [int(p) for p in prefix]
    cnt = np.zeros(N, dtype=np.int64)
    E = 0
    for u in prefix:
        E += int(cnt[u])
        cnt += adj[u]
    state = {"best": int(inc_val), "found": False, "tie": bool(tie_prune),
             "witness": np.zeros(l, dtype=np.int64), "nodes": 0, "complete": True}
    chosen = list(prefix)

    if len(prefix) == l:
        if E < state["best"] or (E == state["best"] and not state["tie"]):
            state.update(best=E, found=True)
            state["witness"][:] = chosen
        return state["best"], state["found"], state["witness"], 0, True

    def rejected(lb: int) -> bool:
        return lb > state["best"] or (lb == state["best"] and state["tie"])

    def dfs(start: int, e: int) -> bool:
        m = l - len(chosen)
        rest = m - 1
        for v in range(start, N - m + 1):
            ec = e + int(cnt[v])
            lb = ec + int(forced[v + 1, rest])
            if rejected(lb):
                continue
            if rest:
                pool = cnt[v + 1:] + adj[v, v + 1:]
                lb += int(np.partition(pool, rest - 1)[:rest].sum())
                if rejected(lb):
                    continue
            state["nodes"] += 1
            chosen.append(v)
            if rest == 0:
                state.update(best=ec, found=True, tie=True)
                state["witness"][:] = chosen
            else:
                cnt[:] += adj[v]
                stop = dfs(v + 1, ec)
                cnt[:] -= adj[v]
                if stop:
                    chosen.pop()
                    return True
            chosen.pop()
            if state["nodes"] >= node_budget:
                state["complete"] = False
                return True
        return False

    dfs(prefix[-1] + 1 if prefix else 0, E)
    return state["best"], state["found"], state["witness"], state["nodes"], state["complete"]


def descend(masks, inw, deg, edges, max_swaps):
    N = masks.size
    idx = np.arange(N)
    swaps = 0
    while swaps < max_swaps:
        if not inw.any() or inw.all():
            break
        dmax = int(deg[inw].max())
        dmin = int(deg[~inw].min())
        base = dmin - dmax
        if base - 1 >= 0:
            break
        U = idx[inw & (deg >= dmax - 1)]
        V = idx[~inw & (deg <= dmin + 1)]
        best, bu, bv = _BIG, -1, -1
        step = max(1, _CHUNK // V.size)
        for i in range(0, U.size, step):
            u = U[i:i + step]
            delta = deg[V][None, :] - deg[u][:, None] - _single_bit(masks[u][:, None] & masks[V][None, :])
            k = int(np.argmin(delta))
            if delta.flat[k] < best:
                best = int(delta.flat[k])
                bu, bv = int(u[k // V.size]), int(V[k % V.size])
            if best == base - 1:
                break
        if best >= 0:
            break
        inw[bu] = False
        inw[bv] = True
        deg -= _single_bit(masks & masks[bu])
        deg += _single_bit(masks & masks[bv])
        edges += best
        swaps += 1
    return edges, swaps
