from fractions import Fraction

import pytest
from hypothesis import given, settings

from jackmaps.algebra import GammaPoly
from jackmaps.maps import enumerate_maps, parse_map
from jackmaps.nonorientability import (
    GAMMA,
    HALF,
    ONE,
    SPECIAL_MODULUS,
    WeightMemo,
    edge_weight,
    empty_map,
    history_weight,
    history_weights,
    lacroix_history,
    lacroix_weight,
    mean_weight,
    mean_weight_at_zero,
    mean_weight_naive,
    reduce_special,
    special_alpha_exponent,
)
from jackmaps.partition import partitions_of

from conftest import maps

KLEIN = "B:0-1,2-3,4-5|W:0-5,1-2,3-4|E:0-2,1-4,3-5"
FIG = "B:1-2,3-4,5-6,7-8,9-10,A-B,C-D|W:2-3,4-5,6-7,8-9,10-1,B-C,D-A|E:1-3,2-10,4-9,5-D,6-C,7-B,8-A"
SINGLE = "B:1-2|W:1-2|E:1-2"
DOUBLED = "B:1-2,3-4|W:2-3,4-1|E:1-3,2-4"


def test_figure_edge_weights():
    M, c = parse_map(FIG)
    e = lambda a, b: tuple(sorted((c.encode(a), c.encode(b))))
    assert edge_weight(M, e("4", "9")) == ONE
    assert edge_weight(M, e("1", "3")) == GAMMA
    assert edge_weight(M, e("6", "C")) == HALF


def test_klein_histories():
    M, _ = parse_map(KLEIN)
    assert history_weight(M, [(1, 4), (0, 2), (3, 5)]) == GammaPoly.constant(Fraction(1, 2))
    assert history_weight(M, [(0, 2), (1, 4), (3, 5)]) == GammaPoly((0, 0, 1))
    values = sorted((w for _, w in history_weights(M)), key=lambda w: w.coeffs)
    assert values.count(GammaPoly.constant(Fraction(1, 2))) == 2
    assert values.count(GammaPoly((0, 0, 1))) == 4


def test_klein_mean():
    M, _ = parse_map(KLEIN)
    want = GammaPoly((Fraction(1, 6), 0, Fraction(2, 3)))
    assert mean_weight(M) == want
    assert mean_weight(M, method="naive") == want


def test_single_and_doubled():
    M, _ = parse_map(SINGLE)
    assert history_weight(M, [(0, 1)]) == ONE
    assert mean_weight(M) == ONE == lacroix_weight(M)
    D, _ = parse_map(DOUBLED)
    assert mean_weight(D) == GAMMA == lacroix_weight(D)


def test_empty_map_weight():
    assert mean_weight(empty_map()) == ONE


def test_bad_history():
    M, _ = parse_map(KLEIN)
    with pytest.raises(ValueError):
        history_weight(M, [(0, 2), (1, 4)])
    with pytest.raises(ValueError):
        history_weight(M, [(0, 2), (0, 2), (3, 5)])


@pytest.mark.parametrize("mode", ["canonical", "labeled", "off"])
def test_memo_modes_agree(mode):
    for pi in partitions_of(4):
        for M in enumerate_maps(pi):
            assert mean_weight(M, memo=WeightMemo(mode)) == mean_weight(M, memo="canonical")


def test_memo_cap(monkeypatch):
    monkeypatch.setenv("JACKMAPS_MEMO_CAP", "3")
    memo = WeightMemo("canonical")
    for M in enumerate_maps((2, 2)):
        mean_weight(M, memo=memo)
    assert len(memo) == 3


def test_memo_rejects_unknown_mode():
    with pytest.raises(ValueError):
        WeightMemo("lru")


def test_pruned_value_at_zero():
    for pi in partitions_of(4):
        for M in enumerate_maps(pi):
            assert mean_weight_at_zero(M, WeightMemo("canonical")) == mean_weight(M)[0]


def test_recursion_matches_naive_up_to_four_edges():
    for n in range(1, 5):
        for pi in partitions_of(n):
            for M in enumerate_maps(pi):
                assert mean_weight(M) == mean_weight_naive(M)


def test_lacroix_equals_mean_on_two_edges():
    for pi in partitions_of(2):
        for M in enumerate_maps(pi):
            assert lacroix_weight(M) == mean_weight(M)
    assert sum(1 for _ in enumerate_maps((2,))) == 3


def test_lacroix_trace():
    M, _ = parse_map(KLEIN)
    h, trace = lacroix_history(M)
    assert trace[0]["start"] == 0
    assert sorted(h) == list(M.edges())
    assert [e for t in trace for e in t["removed"]] == h


def test_special_modulus():
    assert SPECIAL_MODULUS == GammaPoly((-1, 0, 2))
    assert reduce_special(GammaPoly((0, 0, 1))) == GammaPoly.constant(Fraction(1, 2))


# -- properties -------------------------------------------------------------


def _parity_ok(w, chi):
    return w.is_even() if chi % 2 == 0 else w.is_odd()


@given(maps(6))
def test_degree_and_parity(M):
    w = mean_weight(M)
    assert w.degree <= M.d
    assert _parity_ok(w, M.euler_characteristic)
    assert all(c >= 0 for c in w.coeffs)


@settings(max_examples=25)
@given(maps(5))
def test_every_history_bounded(M):
    for _, w in history_weights(M):
        assert w.degree <= M.d
        assert _parity_ok(w, M.euler_characteristic)


@settings(max_examples=25)
@given(maps(5))
def test_history_independence_mod_special(M):
    target = reduce_special(GammaPoly.monomial(1, special_alpha_exponent(M)))
    first = None
    for _, w in history_weights(M):
        assert reduce_special(w) == target
        if first is None:
            first = w
        assert reduce_special(w - first) == GammaPoly()


@settings(max_examples=25)
@given(maps(5))
def test_recursion_matches_naive(M):
    assert mean_weight(M) == mean_weight_naive(M)


@given(maps(6))
def test_lacroix_weight_is_a_history_weight(M):
    h, _ = lacroix_history(M)
    assert lacroix_weight(M) == history_weight(M, h)
    assert lacroix_weight(M).degree <= M.d
