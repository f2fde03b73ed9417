from itertools import combinations

import pytest
from hypothesis import given

from jackmaps.pairings import (
    LabelCodec,
    Pairing,
    Parity,
    all_pairings,
    canonical_base_pairings,
    double_factorial,
    format_pairing,
    parse_pairing,
    polygons,
    position_parity,
    remove_pair,
)
from jackmaps.partition import Partition, partitions_of

from conftest import partitions

EX_B = "1-2,3-4,5-6,7-8,9-10,A-B,C-D"
EX_W = "2-3,4-5,6-7,8-9,10-1,B-C,D-A"


def example_decomposition():
    codec = LabelCodec([t for p in (EX_B + "," + EX_W).split(",") for t in p.split("-")])
    B = parse_pairing(EX_B, codec)
    W = parse_pairing(EX_W, codec)
    return polygons(B, W), codec


def test_example_polygons():
    D, _ = example_decomposition()
    assert sorted(len(p) for p in D.polygons) == [4, 10]
    assert D.type == Partition((5, 2))


def test_single_bigon():
    P = Pairing([(1, 2)])
    D = polygons(P, P)
    assert D.type == Partition((1,)) and len(D) == 1


def test_square():
    D = polygons(parse_pairing("1-2,3-4"), parse_pairing("2-3,4-1"))
    assert D.type == Partition((2,)) and len(D.polygons[0]) == 4


def test_support_mismatch():
    with pytest.raises(ValueError):
        polygons(parse_pairing("1-2"), parse_pairing("1-3"))


def test_positions_in_example():
    D, c = example_decomposition()
    e = c.encode
    assert position_parity(D, e("1"), e("3")) is Parity.ODD
    assert position_parity(D, e("4"), e("9")) is Parity.EVEN
    assert position_parity(D, e("6"), e("C")) is Parity.DIFFERENT_POLYGONS
    with pytest.raises(KeyError):
        position_parity(D, 0, 99)


def test_remove_pair_examples():
    P = parse_pairing("1-2,3-4")
    assert remove_pair(P, (1, 2)) == parse_pairing("3-4")
    assert remove_pair(P, (1, 3)) == parse_pairing("2-4")
    assert remove_pair(parse_pairing("1-2,3-4,5-6"), (2, 5)) == parse_pairing("1-6,3-4")
    with pytest.raises(KeyError):
        remove_pair(P, (1, 9))


def test_base_pairings():
    B, W = canonical_base_pairings((1,))
    assert B == W == Pairing([(0, 1)])
    B, W = canonical_base_pairings((2,))
    assert B == Pairing([(0, 1), (2, 3)]) and W == Pairing([(1, 2), (3, 0)])
    B, W = canonical_base_pairings((5, 2))
    assert polygons(B, W).type == Partition((5, 2))
    # same layout as the lettered example up to the label codec
    D, _ = example_decomposition()
    assert polygons(B, W).type == D.type
    assert canonical_base_pairings(()) == (Pairing(), Pairing())


@pytest.mark.parametrize("n", range(0, 6))
def test_base_types(n):
    for pi in partitions_of(n):
        B, W = canonical_base_pairings(pi)
        assert polygons(B, W).type == pi


def test_enumeration_counts():
    for m in range(0, 5):
        assert sum(1 for _ in all_pairings(range(2 * m))) == double_factorial(2 * m - 1)


def test_text_round_trip():
    codec = LabelCodec(["1", "2", "10", "A", "B"])
    assert [codec.decode(i) for i in range(5)] == ["1", "2", "10", "A", "B"]
    P = parse_pairing("1-10,2-A", codec)
    assert format_pairing(P, codec) == "1-10,2-A"
    with pytest.raises(ValueError):
        parse_pairing("1-2,3")
    with pytest.raises(ValueError):
        Pairing([(1, 1)])


def test_removal_commutes_exhaustively():
    for m in range(2, 5):
        labels = list(range(2 * m))
        for P in all_pairings(labels):
            for a, b, c, d in combinations(labels, 4):
                for e1, e2 in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
                    assert remove_pair(remove_pair(P, e1), e2) == remove_pair(remove_pair(P, e2), e1)


def test_shortening_exhaustively():
    # every couple is conjugate to one whose first pairing is {0,1},{2,3},...
    for m in range(1, 6):
        labels = list(range(2 * m))
        P = Pairing((2 * i, 2 * i + 1) for i in range(m))
        for Q in all_pairings(labels):
            D = polygons(P, Q)
            for e in P.pairs():
                r = len(D.polygon_of(e[0])) // 2
                got = polygons(remove_pair(P, e), remove_pair(Q, e)).type
                assert got == D.type.down(r)


@given(partitions(6))
def test_type_partitions_half_support(pi):
    B, W = canonical_base_pairings(pi)
    assert polygons(B, W).type.size == len(B.partner) // 2
