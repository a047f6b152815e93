from itertools import product

import pytest
from hypothesis import given, strategies as st

from bnsynth import CapacityError, InfluenceGraph, candidate_count, dedekind, enumerate_local_candidates
from bnsynth.candidates import antichains, candidate_space_size, max_clauses, node_candidate_count, resolve_bound
from bnsynth.core import is_canonical


def _truth_table(f, n):
    return tuple(f("".join(p)) for p in product("01", repeat=n))


@pytest.mark.parametrize("d, expected", list(enumerate([2, 3, 6, 20, 168, 7581])))
def test_dedekind_small(d, expected):
    assert candidate_count(d, "max") == expected


def test_dedekind_six():
    assert dedekind(6) == 7828354


def test_dedekind_refuses_seven():
    with pytest.raises(CapacityError):
        dedekind(7)


def test_bounded_counts():
    assert candidate_count(2, 1) == 5  # 0, 1, a, b, a&b
    assert candidate_count(3, 1) == 2 + 7
    assert candidate_count(4, 0) == 2
    assert candidate_count(3, 10) == candidate_count(3, "max")


def test_resolve_bound():
    assert max_clauses(4) == 6
    assert resolve_bound("max", 4) == 6
    assert resolve_bound(9, 4) == 6
    with pytest.raises(ValueError):
        resolve_bound(-1, 3)


def test_antichain_order_is_canonical():
    chains = list(antichains(2))
    assert chains == [(0b01,), (0b10,), (0b11,), (0b01, 0b10)]


@pytest.mark.parametrize("d", range(0, 5))
@pytest.mark.parametrize("k", [1, 2, "max"])
def test_candidates_distinct_and_canonical(d, k):
    g = InfluenceGraph(d + 1, {(j, d) for j in range(d)})
    cands = list(enumerate_local_candidates(d, g, k))
    assert len(cands) == candidate_count(d, k) == node_candidate_count(d, g, k)
    assert len({_truth_table(c, d + 1) for c in cands}) == len(cands)
    for c in cands:
        if not c.is_constant:
            assert is_canonical(c.clause_lists())
            assert len(c.clauses) <= resolve_bound(k, d)


@given(st.integers(0, 3), st.integers(0, 2**12 - 1), st.sampled_from([1, 2, "max"]))
def test_mixed_sign_candidates(d, signs, k):
    n = d + 1
    plus, minus = set(), set()
    for j in range(d):
        code = (signs >> (2 * j)) % 3
        if code in (0, 2):
            plus.add((j, d))
        if code in (1, 2):
            minus.add((j, d))
    g = InfluenceGraph(n, plus, minus)
    cands = list(enumerate_local_candidates(d, g, k))
    assert len(cands) == node_candidate_count(d, g, k)
    assert len({_truth_table(c, n) for c in cands}) == len(cands)
    for c in cands:
        for v, s in c.literals():
            assert (v, d) in (plus if s > 0 else minus)
        assert not (c.positive_mask & c.negative_mask)


def test_candidate_space_size_is_product():
    g = InfluenceGraph(3, {(0, 1), (1, 2), (2, 2)}, {(0, 2)})
    assert candidate_space_size(g) == 2 * 3 * 20
