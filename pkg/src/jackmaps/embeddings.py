"""Embeddings of the bipartite graph of a map into a Young diagram.

An embedding sends black vertices to rows, white vertices to columns and
every edge to the box at the crossing of its row and column, which has to
exist.  Only the set of black neighbours of each white vertex matters, so
multiple edges are irrelevant.

For a diagram with distinct row lengths q_1 > ... > q_l of multiplicities
p_1, ..., p_l, a white vertex whose neighbours sit in blocks phi(b) may use
any of the first q_{max phi(b)} columns, hence

    N_G(P x Q) = sum_{phi: V_black -> [l]} prod_b p_{phi(b)} * prod_w q_{psi(w)},
    psi(w) = max of phi over the black neighbours of w.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import prod

from .algebra import MultivarPoly
from .partition import Partition


class BipartiteGraph:
    """Black vertices 0..n_black-1, white vertices 0..n_white-1, edges (black, white)."""

    __slots__ = ("n_black", "n_white", "edges", "white_neighbors")

    def __init__(self, n_black, n_white, edges):
        self.n_black = n_black
        self.n_white = n_white
        self.edges = tuple(edges)
        nbrs = [set() for _ in range(n_white)]
        for b, w in self.edges:
            nbrs[w].add(b)
        self.white_neighbors = tuple(frozenset(s) for s in nbrs)

    @classmethod
    def from_map(cls, M) -> "BipartiteGraph":
        return cls(*M.bipartite_graph())

    def black_neighbors(self):
        out = [set() for _ in range(self.n_black)]
        for b, w in self.edges:
            out[b].add(w)
        return tuple(frozenset(s) for s in out)

    def swap_colors(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n_white, self.n_black, [(w, b) for b, w in self.edges])

    def __repr__(self):
        return f"BipartiteGraph({self.n_black}, {self.n_white}, {list(self.edges)})"


def graph_of(M) -> BipartiteGraph:
    return BipartiteGraph.from_map(M)


def path_graph_bwb() -> BipartiteGraph:
    return BipartiteGraph(2, 1, [(0, 0), (1, 0)])


def single_edge_graph() -> BipartiteGraph:
    return BipartiteGraph(1, 1, [(0, 0)])


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def _multirect_count(nbrs, n_black, P, Q):
    ell = len(P)
    total = 0
    for phi in product(range(ell), repeat=n_black):
        term = 1
        for b in phi:
            term *= P[b]
        if not term:
            continue
        for s in nbrs:
            term *= Q[max(phi[b] for b in s)]
            if not term:
                break
        total += term
    return total


def _multirect_count_dual(G, P, Q):
    """Same value summed over the whites instead.

    Writing q_k = sum_{t >= k} (q_t - q_{t+1}) and expanding, a white w picks a
    threshold t_w, and each black b may then sit in any block <= min t_w over
    its white neighbours.
    """
    ell = len(P)
    dq = [Q[t] - (Q[t + 1] if t + 1 < ell else 0) for t in range(ell)]
    cum = []
    acc = 0
    for x in P:
        acc += x
        cum.append(acc)
    bn = G.black_neighbors()
    total = 0
    for t in product(range(ell), repeat=G.n_white):
        term = 1
        for w in t:
            term *= dq[w]
        if not term:
            continue
        for s in bn:
            term *= cum[min(t[w] for w in s)]
            if not term:
                break
        total += term
    return total


def count_embeddings(G: BipartiteGraph, lam) -> int:
    """N_G(lambda): sum over row assignments of the blacks of prod_w (shortest neighbouring row).

    Rows of equal length are grouped, which does not change the sum; the sum
    runs over the smaller colour class.
    """
    lam = Partition(lam)
    if G.n_black == 0:
        return 1 if G.n_white == 0 else 0
    P, Q = lam.multirect()
    if not P:
        return 0
    if G.n_white < G.n_black:
        return _multirect_count_dual(G, P, Q)
    return _multirect_count(G.white_neighbors, G.n_black, P, Q)


def count_embeddings_multirect(G: BipartiteGraph, P, Q) -> int:
    """N_G at a multirectangular point with Q strictly decreasing."""
    if G.n_white < G.n_black:
        return _multirect_count_dual(G, P, Q)
    return _multirect_count(G.white_neighbors, G.n_black, P, Q)


def count_embeddings_rows(G: BipartiteGraph, lam) -> int:
    """Same sum without grouping rows (reference for the grouped version)."""
    lam = Partition(lam)
    total = 0
    for rows in product(range(len(lam)), repeat=G.n_black):
        term = 1
        for s in G.white_neighbors:
            term *= min(lam[rows[b]] for b in s)
        total += term
    return total


def brute_force_embeddings(G: BipartiteGraph, lam) -> int:
    """Count (row of each black, column of each white) such that every edge lands in a box."""
    lam = Partition(lam)
    if not lam:
        return 1 if G.n_black == G.n_white == 0 else 0
    total = 0
    for rows in product(range(len(lam)), repeat=G.n_black):
        for cols in product(range(lam[0]), repeat=G.n_white):
            if all(cols[w] < lam[rows[b]] for b, w in G.edges):
                total += 1
    return total


def count_embeddings_rect(G: BipartiteGraph, p: int, q: int) -> int:
    return p ** G.n_black * q ** G.n_white


def multirect_variables(ell: int, p="p", q="q") -> tuple:
    return tuple(f"{p}_{i}" for i in range(1, ell + 1)) + tuple(f"{q}_{i}" for i in range(1, ell + 1))


def _multirect_exponents(nbrs, n_black, ell):
    """Counter of exponent vectors (p_1..p_l, q_1..q_l) over all phi."""
    out = {}
    for phi in product(range(ell), repeat=n_black):
        e = [0] * (2 * ell)
        for b in phi:
            e[b] += 1
        for s in nbrs:
            e[ell + max(phi[b] for b in s)] += 1
        e = tuple(e)
        out[e] = out.get(e, 0) + 1
    return out


@lru_cache(maxsize=None)
def _cached_exponents(key, ell):
    n_black, nbrs = key
    return _multirect_exponents(nbrs, n_black, ell)


def symbolic_multirect(G: BipartiteGraph, ell: int, p="p", q="q") -> MultivarPoly:
    """N_G(P x Q) as a polynomial in p_1..p_l, q_1..q_l."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    variables = multirect_variables(ell, p, q)
    exps = _cached_exponents(canonical_graph_key(G), ell)
    return MultivarPoly(variables, dict(exps))


# ---------------------------------------------------------------------------
# Isomorphism key for aggregation
# ---------------------------------------------------------------------------

_PERM_LIMIT = 20000


def canonical_graph_key(G: BipartiteGraph) -> tuple:
    """Key determining N_G: number of blacks and the multiset of white neighbour sets.

    Blacks are renumbered to minimise the sorted tuple of neighbour bitmasks,
    trying only the permutations compatible with a degree refinement.  If that
    is still too many, a fixed (non-canonical) numbering is used; the key then
    remains correct but merges fewer graphs.
    """
    nb = G.n_black
    nbrs = G.white_neighbors
    inv = []
    for b in range(nb):
        inv.append(tuple(sorted(len(s) for s in nbrs if b in s)))
    order = sorted(range(nb), key=lambda b: inv[b])
    groups = []
    for b in order:
        if groups and inv[groups[-1][0]] == inv[b]:
            groups[-1].append(b)
        else:
            groups.append([b])
    count = prod(_fact(len(g)) for g in groups)
    if count > _PERM_LIMIT:
        relabel = {b: i for i, b in enumerate(order)}
        masks = tuple(sorted(tuple(sorted(relabel[b] for b in s)) for s in nbrs))
        return nb, tuple(frozenset(m) for m in masks)
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        relabel = {}
        i = 0
        for g in choice:
            for b in g:
                relabel[b] = i
                i += 1
        masks = tuple(sorted(sum(1 << relabel[b] for b in s) for s in nbrs))
        if best is None or masks < best:
            best = masks
    sets = tuple(frozenset(i for i in range(nb) if m >> i & 1) for m in best)
    return nb, sets


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def graph_from_key(key) -> BipartiteGraph:
    nb, sets = key
    return BipartiteGraph(nb, len(sets), [(b, w) for w, s in enumerate(sets) for b in sorted(s)])


def parse_multirect(text: str):
    """Parse ``"P=1,1,1;Q=3,2,1"`` into two integer tuples."""
    fields = {}
    for chunk in text.split(";"):
        if "=" not in chunk:
            raise ValueError(f"bad multirectangular field {chunk!r}")
        k, v = chunk.split("=", 1)
        fields[k.strip().upper()] = tuple(int(x) for x in v.split(",") if x.strip())
    if set(fields) != {"P", "Q"} or len(fields["P"]) != len(fields["Q"]):
        raise ValueError("expected P=...;Q=... of equal lengths")
    if any(x < 0 for x in fields["P"] + fields["Q"]):
        raise ValueError("multirectangular coordinates must be non-negative")
    return fields["P"], fields["Q"]
