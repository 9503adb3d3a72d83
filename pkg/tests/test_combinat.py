from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from g31.combinat import binomial, c_fraction, iter_triples, rank_triple, unrank_triple


@pytest.mark.parametrize("n,k,expected", [(6, 3, 20), (5, 0, 1), (20, 3, 1140), (3, 5, 0)])
def test_binomial_values(n, k, expected):
    assert binomial(n, k) == expected


@given(st.integers(1, 1000), st.integers(1, 4))
def test_pascal_rule(n, k):
    assert binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1)


def test_binomial_rejects_overflow_and_bad_input():
    with pytest.raises(OverflowError):
        binomial(1000, 500)
    with pytest.raises(ValueError):
        binomial(1001, 3)
    with pytest.raises(ValueError):
        binomial(-1, 0)
    # largest quantity used anywhere: edge count at n = 1000 still fits
    assert binomial(1000, 3) * 3 * binomial(997, 2) // 2 < 2**63


def test_rank_first_elements():
    assert rank_triple((1, 2, 3), 10) == 0
    assert rank_triple((1, 2, 4), 10) == 1


def test_round_trip_n8_exhaustive():
    seen = []
    for t in combinations(range(1, 9), 3):
        i = rank_triple(t, 8)
        assert unrank_triple(i, 8) == t
        seen.append(i)
    assert sorted(seen) == list(range(56))


@pytest.mark.parametrize("n", range(3, 31))
def test_rank_is_bijection(n):
    for i, t in enumerate(iter_triples(n)):
        assert rank_triple(t, n) == i
        assert unrank_triple(i, n) == t
    assert i == binomial(n, 3) - 1


@pytest.mark.parametrize("bad", [(1, 1, 2), (3, 2, 1), (0, 1, 2), (1, 2, 9), (1, 2)])
def test_rank_rejects_malformed(bad):
    with pytest.raises(ValueError):
        rank_triple(bad, 8)


def test_unrank_rejects_out_of_range():
    with pytest.raises(ValueError):
        unrank_triple(56, 8)
    with pytest.raises(ValueError):
        unrank_triple(-1, 8)


def test_c_fraction_examples():
    assert c_fraction(20, 1140) == 0
    assert c_fraction(20, 0) == 1
    assert c_fraction(20, 570) == Fraction(1, 2)
    with pytest.raises(ValueError):
        c_fraction(20, 1141)


@given(st.integers(3, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, binomial(n, 3)))))
def test_c_fraction_complements_density(nl):
    n, l = nl
    c = c_fraction(n, l)
    assert c + Fraction(l, binomial(n, 3)) == 1
    assert c.denominator > 0
