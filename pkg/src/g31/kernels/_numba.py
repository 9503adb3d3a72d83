"""numba-compiled hot loops. Import only through :mod:`g31.kernels`."""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_BIG = np.int64(2**62)


@njit(cache=True, inline="always")
def _single_bit(x):
    return x != _ZERO and (x & (x - _ONE)) == _ZERO


@njit(cache=True, inline="always")
def _adj(bits, u, v):
    return np.int64((bits[u, v >> 6] >> np.uint64(v & 63)) & _ONE)


@njit(cache=True, nogil=True)
def count_pairs_within(masks):
    total = 0
    m = masks.shape[0]
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if _single_bit(mi & masks[j]):
                total += 1
    return total


@njit(cache=True, nogil=True)
def count_pairs_between(a, b):
    total = 0
    for i in range(a.shape[0]):
        ai = a[i]
        for j in range(b.shape[0]):
            if _single_bit(ai & b[j]):
                total += 1
    return total


@njit(cache=True, nogil=True)
def degrees_into(all_masks, members):
    out = np.zeros(all_masks.shape[0], dtype=np.int64)
    for i in range(all_masks.shape[0]):
        mi = all_masks[i]
        c = 0
        for j in range(members.shape[0]):
            if _single_bit(mi & members[j]):
                c += 1
        out[i] = c
    return out


@njit(cache=True, nogil=True)
def brute_min_edges(bits, N, l):
    """Exhaustive lex-order scan of all l-subsets; returns (min, first argmin)."""
    idx = np.arange(l).astype(np.int64)
    partial = np.zeros(l + 1, dtype=np.int64)
    for k in range(l):
        c = 0
        for t in range(k):
            c += _adj(bits, idx[t], idx[k])
        partial[k + 1] = partial[k] + c
    best = partial[l]
    best_idx = idx.copy()
    count = 1
    while True:
        k = l - 1
        while k >= 0 and idx[k] == N - l + k:
            k -= 1
        if k < 0:
            break
        idx[k] += 1
        for j in range(k + 1, l):
            idx[j] = idx[j - 1] + 1
        for j in range(k, l):
            c = 0
            v = idx[j]
            for t in range(j):
                c += _adj(bits, idx[t], v)
            partial[j + 1] = partial[j] + c
        count += 1
        if partial[l] < best:
            best = partial[l]
            best_idx[:] = idx
    return best, best_idx, count


@njit(cache=True, nogil=True)
def clique_cover_sizes(bits, N, s):
    """First-fit clique cover of vertices s..N-1; returns clique sizes."""
    W = bits.shape[1]
    common = np.zeros((N - s + 1, W), dtype=np.uint64)
    sizes = np.zeros(N - s + 1, dtype=np.int64)
    k = 0
    for v in range(s, N):
        placed = False
        word = v >> 6
        sh = np.uint64(v & 63)
        for c in range(k):
            if (common[c, word] >> sh) & _ONE:
                for w in range(W):
                    common[c, w] &= bits[v, w]
                sizes[c] += 1
                placed = True
                break
        if not placed:
            for w in range(W):
                common[k, w] = bits[v, w]
            sizes[k] = 1
            k += 1
    return sizes[:k]


@njit(cache=True, nogil=True)
def forced_edges_table(bits, N, lmax):
    """table[s, m]: clique-cover lower bound on edges among any m vertices of s..N-1."""
    table = np.full((N + 1, lmax + 1), _BIG, dtype=np.int64)
    table[N, 0] = 0
    for s in range(N):
        sizes = clique_cover_sizes(bits, N, s)
        # marginal cost j is available once per clique larger than j
        table[s, 0] = 0
        acc = 0
        m = 0
        j = 0
        while m < lmax and m < N - s:
            avail = 0
            for c in range(sizes.shape[0]):
                if sizes[c] > j:
                    avail += 1
            take = min(avail, min(lmax, N - s) - m)
            for _ in range(take):
                m += 1
                acc += j
                table[s, m] = acc
            j += 1
    return table


@njit(cache=True, nogil=True)
def _sum_smallest(cnt, v, bits, lo, N, m, hist):
    if m == 0:
        return 0
    hist[:] = 0
    top = hist.shape[0] - 1
    for x in range(lo, N):
        c = cnt[x] + _adj(bits, v, x)
        if c > top:
            c = top
        hist[c] += 1
    total = 0
    need = m
    for c in range(hist.shape[0]):
        h = hist[c]
        if h >= need:
            total += need * c
            return total
        total += h * c
        need -= h
    return total


@njit(cache=True, nogil=True)
def bb_task(bits, N, l, forced, prefix, inc_val, tie_prune, node_budget):
    """Depth-first search below a fixed prefix for a minimum-edge l-subset.

    A child is explored when its lower bound is below ``inc_val``, or equal to it
    while ``tie_prune`` is false. Returns (best, found, witness, nodes, complete).
    """
    d0 = prefix.shape[0]
    cnt = np.zeros(N, dtype=np.int64)
    chosen = np.zeros(l, dtype=np.int64)
    witness = np.zeros(l, dtype=np.int64)
    hist = np.zeros(l + 2, dtype=np.int64)
    E = 0
    for k in range(d0):
        u = prefix[k]
        chosen[k] = u
        E += cnt[u]
        for x in range(N):
            cnt[x] += _adj(bits, u, x)
    best = inc_val
    found = False
    nodes = 0
    if d0 == l:
        if E < best or (E == best and not tie_prune):
            best = E
            found = True
            witness[:] = chosen
        return best, found, witness, nodes, True

    pos = np.zeros(l + 1, dtype=np.int64)
    estack = np.zeros(l + 1, dtype=np.int64)
    pos[d0] = prefix[d0 - 1] + 1 if d0 > 0 else 0
    estack[d0] = E
    d = d0
    complete = True
    while d >= d0:
        m = l - d
        v = pos[d]
        if v > N - m:
            d -= 1
            if d >= d0:
                u = chosen[d]
                for x in range(N):
                    cnt[x] -= _adj(bits, u, x)
            continue
        pos[d] = v + 1
        ec = estack[d] + cnt[v]
        rest = m - 1
        lb = ec + forced[v + 1, rest]
        if lb > best or (lb == best and tie_prune):
            continue
        lb += _sum_smallest(cnt, v, bits, v + 1, N, rest, hist)
        if lb > best or (lb == best and tie_prune):
            continue
        nodes += 1
        if rest == 0:
            best = ec
            found = True
            tie_prune = True
            chosen[d] = v
            witness[:] = chosen
        else:
            chosen[d] = v
            for x in range(N):
                cnt[x] += _adj(bits, v, x)
            d += 1
            estack[d] = ec
            pos[d] = v + 1
        if nodes >= node_budget:
            complete = False
            break
    return best, found, witness, nodes, complete


@njit(cache=True, nogil=True)
def descend(masks, inw, deg, edges, max_swaps):
    """Steepest-descent 1-swap; mutates inw/deg. Returns (edges, swaps)."""
    N = masks.shape[0]
    swaps = 0
    while swaps < max_swaps:
        dmax = -1
        dmin = _BIG
        for x in range(N):
            if inw[x]:
                if deg[x] > dmax:
                    dmax = deg[x]
            elif deg[x] < dmin:
                dmin = deg[x]
        if dmax < 0 or dmin == _BIG:
            break
        base = dmin - dmax
        if base - 1 >= 0:
            break
        best = _BIG
        bu = -1
        bv = -1
        stop = False
        for u in range(N):
            if not inw[u] or deg[u] < dmax - 1:
                continue
            mu = masks[u]
            for v in range(N):
                if inw[v] or deg[v] > dmin + 1:
                    continue
                delta = deg[v] - deg[u]
                if _single_bit(mu & masks[v]):
                    delta -= 1
                if delta < best:
                    best = delta
                    bu = u
                    bv = v
                    if best == base - 1:
                        stop = True
                        break
            if stop:
                break
        if best >= 0:
            break
        inw[bu] = False
        inw[bv] = True
        mu = masks[bu]
        mv = masks[bv]
        for x in range(N):
            mx = masks[x]
            if _single_bit(mx & mu):
                deg[x] -= 1
            if _single_bit(mx & mv):
                deg[x] += 1
        edges += best
        swaps += 1
    return edges, swaps
