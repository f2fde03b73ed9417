import pytest
from hypothesis import given, strategies as st

from jackmaps.embeddings import (
    BipartiteGraph,
    brute_force_embeddings,
    canonical_graph_key,
    count_embeddings,
    count_embeddings_rect,
    count_embeddings_rows,
    graph_from_key,
    graph_of,
    parse_multirect,
    path_graph_bwb,
    single_edge_graph,
    symbolic_multirect,
)
from jackmaps.algebra import MultivarPoly
from jackmaps.partition import Partition, partitions_of, partitions_up_to

from conftest import maps

V2 = ("p_1", "p_2", "q_1", "q_2")


def test_single_edge():
    G = single_edge_graph()
    assert count_embeddings(G, (2, 1)) == 3
    assert count_embeddings_rect(G, 3, 4) == 12
    assert count_embeddings(G, (4, 4, 4)) == 12


def test_path():
    G = path_graph_bwb()
    assert count_embeddings(G, (2, 1)) == 5
    assert count_embeddings_rect(G, 2, 2) == 8 == count_embeddings(G, (2, 2))


def test_rect_zero():
    assert count_embeddings_rect(single_edge_graph(), 0, 5) == 0
    assert count_embeddings_rect(BipartiteGraph(0, 0, []), 0, 5) == 1


def test_symbolic_examples():
    assert symbolic_multirect(single_edge_graph(), 2) == MultivarPoly(V2, {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1})
    want = MultivarPoly(V2, {(2, 0, 1, 0): 1, (1, 1, 0, 1): 2, (0, 2, 0, 1): 1})
    assert symbolic_multirect(path_graph_bwb(), 2) == want
    G = BipartiteGraph(2, 3, [(0, 0), (1, 1), (0, 2), (1, 2)])
    assert symbolic_multirect(G, 1) == MultivarPoly(("p_1", "q_1"), {(2, 3): 1})
    with pytest.raises(ValueError):
        symbolic_multirect(G, 0)


def test_parse_multirect():
    assert parse_multirect("P=1,1,1;Q=3,2,1") == ((1, 1, 1), (3, 2, 1))
    with pytest.raises(ValueError):
        parse_multirect("P=1,1;Q=3")
    assert Partition("4,3,1") == Partition((4, 3, 1))


def test_consistency_triangle_small_maps():
    from jackmaps.maps import enumerate_maps
    for pi in [(2,), (2, 1), (3,)]:
        for M in enumerate_maps(pi):
            G = graph_of(M)
            sym = {ell: symbolic_multirect(G, ell) for ell in (1, 2, 3)}
            for lam in partitions_up_to(6):
                if not lam:
                    continue
                n = count_embeddings(G, lam)
                assert n == brute_force_embeddings(G, lam) == count_embeddings_rows(G, lam)
                P, Q = lam.multirect()
                assert sym[len(P)].substitute(dict(zip(sym[len(P)].variables, P + Q))) == n


def test_graph_key_round_trip():
    G = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 1), (0, 1)])
    H = graph_from_key(canonical_graph_key(G))
    for lam in partitions_of(5):
        assert count_embeddings(G, lam) == count_embeddings(H, lam)


@st.composite
def graphs(draw):
    nb = draw(st.integers(1, 4))
    nw = draw(st.integers(1, 4))
    edges = [(b, w) for b in range(nb) for w in range(nw) if draw(st.booleans())]
    for b in range(nb):
        edges.append((b, draw(st.integers(0, nw - 1))))
    for w in range(nw):
        edges.append((draw(st.integers(0, nb - 1)), w))
    return BipartiteGraph(nb, nw, edges)


lams = st.integers(1, 6).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@given(graphs(), lams)
def test_count_matches_brute_force(G, lam):
    assert count_embeddings(G, lam) == brute_force_embeddings(G, lam) == count_embeddings_rows(G, lam)


@given(graphs(), lams)
def test_conjugation_swaps_colors(G, lam):
    assert count_embeddings(G, lam.conjugate()) == count_embeddings(G.swap_colors(), lam)


@given(graphs(), st.integers(0, 4), st.integers(0, 4))
def test_rectangles(G, p, q):
    assert count_embeddings_rect(G, p, q) == count_embeddings(G, [q] * p if q else [])


@given(graphs(), st.permutations(range(4)), lams)
def test_key_invariant_under_black_relabeling(G, perm, lam):
    sigma = [x for x in perm if x < G.n_black]
    H = BipartiteGraph(G.n_black, G.n_white, [(sigma[b], w) for b, w in G.edges])
    assert canonical_graph_key(H) == canonical_graph_key(G)


@given(maps(5), lams)
def test_map_graphs(M, lam):
    G = graph_of(M)
    assert count_embeddings(G, lam) == brute_force_embeddings(G, lam)
