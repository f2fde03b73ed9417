"""Maps as triples (B, W, E) of pairings of one label set.

Faces are the polygons of L(B, W), black vertices those of L(B, E) and
white vertices those of L(W, E).  Removing an edge applies the pairing
removal operator to all three pairings, so the remaining labels keep their
names.
"""

from __future__ import annotations

import enum
from functools import cached_property

from .pairings import (
    LabelCodec,
    Pairing,
    PolygonDecomposition,
    all_pairings,
    canonical_base_pairings,
    double_factorial,
    format_pairing,
    parse_pair_tokens,
    polygons,
    remove_pair_partner,
)
from .partition import Partition


class EdgeKind(enum.Enum):
    STRAIGHT = "straight"
    TWISTED = "twisted"
    INTERFACE = "interface"


def _edge(e):
    a, b = e
    return (a, b) if a < b else (b, a)


class Map:
    __slots__ = ("B", "W", "E", "__dict__")

    def __init__(self, B: Pairing, W: Pairing, E: Pairing):
        if not (B.partner.keys() == W.partner.keys() == E.partner.keys()):
            raise ValueError("B, W and E must pair the same set")
        self.B, self.W, self.E = B, W, E

    # -- structure ---------------------------------------------------------

    @property
    def support(self):
        return self.B.support

    @property
    def n_edges(self) -> int:
        return len(self.E)

    def edges(self) -> tuple:
        return self.E.pairs()

    @cached_property
    def faces(self) -> PolygonDecomposition:
        return polygons(self.B, self.W)

    @cached_property
    def black_vertices(self) -> PolygonDecomposition:
        return polygons(self.B, self.E)

    @cached_property
    def white_vertices(self) -> PolygonDecomposition:
        return polygons(self.W, self.E)

    @property
    def face_type(self) -> Partition:
        return self.faces.type

    @property
    def n_black(self) -> int:
        return len(self.black_vertices)

    @property
    def n_white(self) -> int:
        return len(self.white_vertices)

    @property
    def n_vertices(self) -> int:
        return self.n_black + self.n_white

    @cached_property
    def components(self) -> tuple:
        """Connected components as a sorted tuple of frozensets of labels."""
        parent = {x: x for x in self.B.partner}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for P in (self.B, self.W, self.E):
            for a, b in P.partner.items():
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        groups = {}
        for x in parent:
            groups.setdefault(find(x), set()).add(x)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + len(self.faces)

    @property
    def d(self) -> int:
        return 2 * self.n_components - self.euler_characteristic

    # -- edges -------------------------------------------------------------

    def _check_edge(self, e):
        a, b = e
        if self.E.partner.get(a) != b:
            raise KeyError(f"{e} is not an edge of the map")

    def edge_kind(self, e) -> EdgeKind:
        self._check_edge(e)
        where = self.faces.where
        k1, i1 = where[e[0]]
        k2, i2 = where[e[1]]
        if k1 != k2:
            return EdgeKind.INTERFACE
        return EdgeKind.STRAIGHT if (abs(i1 - i2) - 1) % 2 == 0 else EdgeKind.TWISTED

    def classify_edge(self, e):
        """(kind, black endpoint is a leaf, white endpoint is a leaf)."""
        kind = self.edge_kind(e)
        a, b = e
        return kind, self.B.partner[a] == b, self.W.partner[a] == b

    def is_bridge(self, e) -> bool:
        _, black_leaf, white_leaf = self.classify_edge(e)
        if black_leaf or white_leaf:
            return True
        a, b = e
        black = next(x for x in self.black_vertices.polygon_of(a) if x not in (a, b))
        white = next(x for x in self.white_vertices.polygon_of(a) if x not in (a, b))
        rest = self.remove_edge(e)
        comp = {x: k for k, c in enumerate(rest.components) for x in c}
        return comp[black] != comp[white]

    def remove_edge(self, e) -> "Map":
        self._check_edge(e)
        a, b = e
        return Map(
            Pairing.from_partner(remove_pair_partner(self.B.partner, a, b)),
            Pairing.from_partner(remove_pair_partner(self.W.partner, a, b)),
            Pairing.from_partner(remove_pair_partner(self.E.partner, a, b)),
        )

    def remove_edges(self, edges) -> "Map":
        M = self
        for e in edges:
            M = M.remove_edge(e)
        return M

    # -- misc --------------------------------------------------------------

    def relabel(self, sigma) -> "Map":
        return Map(self.B.relabel(sigma), self.W.relabel(sigma), self.E.relabel(sigma))

    def swap_colors(self) -> "Map":
        return Map(self.W, self.B, self.E)

    def __eq__(self, other):
        if not isinstance(other, Map):
            return NotImplemented
        return self.B == other.B and self.W == other.W and self.E == other.E

    def __hash__(self):
        return hash((self.B, self.W, self.E))

    def __repr__(self):
        return f"Map({format_map(self)})"

    def bipartite_graph(self):
        """(number of black vertices, number of white vertices, edge list of (black, white) indices)."""
        bw = self.black_vertices.where
        ww = self.white_vertices.where
        edges = [(bw[a][0], ww[a][0]) for a, _ in self.edges()]
        return self.n_black, self.n_white, edges

    def to_json(self, codec: LabelCodec | None = None) -> dict:
        dec = (lambda x: x) if codec is None else codec.decode
        edges = []
        for e in self.edges():
            kind, bl, wl = self.classify_edge(e)
            edges.append({
                "edge": [dec(e[0]), dec(e[1])],
                "kind": kind.value,
                "black_leaf": bl,
                "white_leaf": wl,
                "bridge": self.is_bridge(e),
            })
        return {
            "map": format_map(self, codec),
            "face_type": list(self.face_type),
            "faces": len(self.faces),
            "black_vertices": self.n_black,
            "white_vertices": self.n_white,
            "edges": self.n_edges,
            "components": self.n_components,
            "chi": self.euler_characteristic,
            "d": self.d,
            "edge_classification": edges,
        }


# functional aliases
def faces(M: Map) -> PolygonDecomposition:
    return M.faces


def black_vertices(M: Map) -> PolygonDecomposition:
    return M.black_vertices


def white_vertices(M: Map) -> PolygonDecomposition:
    return M.white_vertices


def connected_components(M: Map):
    return M.n_components, M.components


def euler_and_d(M: Map):
    return M.euler_characteristic, M.d


def classify_edge(M: Map, e):
    return M.classify_edge(e)


def is_bridge(M: Map, e) -> bool:
    return M.is_bridge(e)


def remove_edge(M: Map, e) -> Map:
    return M.remove_edge(e)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def map_count(pi) -> int:
    return double_factorial(2 * Partition(pi).size - 1)


def shard_prefixes(pi) -> list:
    """Partners available for label 0; one enumeration shard each."""
    n = Partition(pi).size
    return list(range(1, 2 * n))


def enumerate_maps(pi, prefix=None):
    """All maps with face-type ``pi`` on the canonical base pairings.

    With ``prefix`` given, only the maps whose edge at label 0 is ``{0, prefix}``.
    """
    B, W = canonical_base_pairings(pi)
    labels = sorted(B.partner)
    if not labels:
        yield Map(B, W, Pairing())
        return
    if prefix is None:
        for E in all_pairings(labels):
            yield Map(B, W, E)
        return
    rest = [x for x in labels if x not in (labels[0], prefix)]
    for E in all_pairings(rest):
        partner = dict(E.partner)
        partner[labels[0]] = prefix
        partner[prefix] = labels[0]
        yield Map(B, W, Pairing.from_partner(partner))


# ---------------------------------------------------------------------------
# Memoization keys
# ---------------------------------------------------------------------------


def _component_code(seed, b, w, e):
    ids = {seed: 0}
    order = [seed]
    i = 0
    while i < len(order):
        x = order[i]
        for y in (b[x], w[x], e[x]):
            if y not in ids:
                ids[y] = len(order)
                order.append(y)
        i += 1
    code = []
    for x in order:
        code.append(ids[b[x]])
        code.append(ids[w[x]])
        code.append(ids[e[x]])
    return tuple(code)


def _component_min_code(comp, b, w, e):
    """Smallest breadth-first code over all seeds, grown for all seeds in lockstep.

    A seed is dropped as soon as its partial code exceeds the best one; seeds
    still tied at the end give identical codes.
    """
    states = [({x: 0}, [x]) for x in comp]
    code = []
    n = len(comp)
    for i in range(n):
        best = None
        keep = []
        for ids, order in states:
            x = order[i]
            trip = []
            for y in (b[x], w[x], e[x]):
                k = ids.get(y)
                if k is None:
                    k = len(order)
                    ids[y] = k
                    order.append(y)
                trip.append(k)
            trip = tuple(trip)
            if best is None or trip < best:
                best = trip
                keep = [(ids, order)]
            elif trip == best:
                keep.append((ids, order))
        states = keep
        code.extend(best)
    return tuple(code)


def canonical_key_from_partners(b: dict, w: dict, e: dict) -> tuple:
    """Relabeling-invariant key: per component, the smallest breadth-first code over all seeds."""
    seen = set()
    codes = []
    for s in b:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            x = comp[i]
            for y in (b[x], w[x], e[x]):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
            i += 1
        codes.append(_component_min_code(comp, b, w, e))
    codes.sort()
    return tuple(codes)


def canonical_key_reference(M: Map) -> tuple:
    """Same key computed seed by seed (slow; used to cross-check)."""
    b, w, e = M.B.partner, M.W.partner, M.E.partner
    seen = set()
    codes = []
    for s in b:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            x = comp[i]
            for y in (b[x], w[x], e[x]):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
            i += 1
        codes.append(min(_component_code(x, b, w, e) for x in comp))
    codes.sort()
    return tuple(codes)


def canonical_key(M: Map) -> tuple:
    return canonical_key_from_partners(M.B.partner, M.W.partner, M.E.partner)


def labeled_key(M: Map) -> tuple:
    return (M.B, M.W, M.E)


# ---------------------------------------------------------------------------
# Text format "B:1-2,3-4|W:2-3,4-1|E:1-3,2-4"
# ---------------------------------------------------------------------------


def parse_map(text: str):
    """Parse the map text format; returns ``(Map, LabelCodec)``."""
    fields = {}
    for chunk in text.split("|"):
        if ":" not in chunk:
            raise ValueError(f"bad map field {chunk!r}")
        name, body = chunk.split(":", 1)
        fields[name.strip().upper()] = parse_pair_tokens(body)
    if set(fields) != {"B", "W", "E"}:
        raise ValueError("map text needs exactly the fields B, W and E")
    tokens = [t for pairs in fields.values() for pair in pairs for t in pair]
    codec = LabelCodec(tokens)
    enc = codec.encode
    B, W, E = (Pairing((enc(a), enc(b)) for a, b in fields[k]) for k in "BWE")
    return Map(B, W, E), codec


def format_map(M: Map, codec: LabelCodec | None = None) -> str:
    return "|".join(f"{k}:{format_pairing(P, codec)}" for k, P in zip("BWE", (M.B, M.W, M.E)))
