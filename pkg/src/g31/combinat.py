"""Exact integer combinatorics: binomials, colex ranking of 3-subsets, c_n."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

# Every count in the package must fit a signed 64-bit word.
INT64_MAX = 2**63 - 1
MAX_N = 1000


def binomial(n: int, k: int) -> int:
    """C(n, k), exact. Returns 0 for k > n.

    Raises ValueError on negative/oversized arguments and OverflowError if the
    result does not fit a signed 64-bit integer.
    """
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({n}, {k})")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds supported ground-set size {MAX_N}")
    if k > n:
        return 0
    value = math.comb(n, k)
    if value > INT64_MAX:
        raise OverflowError(f"C({n},{k}) does not fit in 64 bits")
    return value


def checked(value: int) -> int:
    """Pass an integer count through the 64-bit guard."""
    if abs(value) > INT64_MAX:
        raise OverflowError(f"{value} does not fit in 64 bits")
    return value


def _check_triple(t: Sequence[int], n: int) -> tuple[int, int, int]:
    if len(t) != 3:
        raise ValueError(f"triple must have 3 elements, got {t!r}")
    a, b, c = (int(x) for x in t)
    if not (1 <= a < b < c <= n):
        raise ValueError(f"triple {t!r} is not strictly increasing inside 1..{n}")
    return a, b, c


def rank_triple(t: Sequence[int], n: int) -> int:
    """Colex rank of a sorted 1-based triple: C(a-1,1) + C(b-1,2) + C(c-1,3)."""
    a, b, c = _check_triple(t, n)
    return (a - 1) + math.comb(b - 1, 2) + math.comb(c - 1, 3)


def _largest_below(i: int, k: int, hi: int) -> int:
    # largest m <= hi with C(m, k) <= i
    lo = k - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if math.comb(mid, k) <= i:
            lo = mid
        else:
            hi = mid - 1
    return lo


def unrank_triple(i: int, n: int) -> tuple[int, int, int]:
    """Inverse of :func:`rank_triple`."""
    total = binomial(n, 3)
    if not 0 <= i < total:
        raise ValueError(f"index {i} outside 0..{total - 1}")
    c0 = _largest_below(i, 3, n - 1)
    i -= math.comb(c0, 3)
    b0 = _largest_below(i, 2, c0 - 1)
    i -= math.comb(b0, 2)
    return (i + 1, b0 + 1, c0 + 1)


def iter_triples(n: int) -> Iterator[tuple[int, int, int]]:
    """All triples of 1..n in colex order, so position == rank."""
    for c in range(3, n + 1):
        for b in range(2, c):
            for a in range(1, b):
                yield (a, b, c)


def triple_mask(t: Iterable[int]) -> int:
    m = 0
    for x in t:
        m |= 1 << (int(x) - 1)
    return m


def c_fraction(n: int, l: int) -> Fraction:
    """Complement density 1 - l / C(n,3) as an exact fraction."""
    total = binomial(n, 3)
    if not 0 <= l <= total:
        raise ValueError(f"l={l} outside 0..C({n},3)={total}")
    return 1 - Fraction(l, total)
