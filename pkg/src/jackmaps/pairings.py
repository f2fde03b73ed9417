"""Pairings of a finite label set and the polygons formed by two of them."""

from __future__ import annotations

import enum
import re

from .partition import Partition


class Pairing:
    """A fixpoint-free involution on a finite set of integer labels.

    ``partner`` is a dict ``label -> label``; treat it as read-only.
    """

    __slots__ = ("partner", "_hash")

    def __init__(self, pairs=()):
        partner = {}
        for a, b in pairs:
            if a == b:
                raise ValueError(f"label {a} paired with itself")
            if a in partner or b in partner:
                raise ValueError(f"label used twice in pairing: {a}-{b}")
            partner[a] = b
            partner[b] = a
        self.partner = partner
        self._hash = None

    @classmethod
    def from_partner(cls, partner: dict) -> "Pairing":
        p = object.__new__(cls)
        p.partner = partner
        p._hash = None
        return p

    @property
    def support(self) -> frozenset:
        return frozenset(self.partner)

    def __len__(self):
        """Number of pairs."""
        return len(self.partner) // 2

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.partner.get(a) == b

    def __getitem__(self, label):
        return self.partner[label]

    def pairs(self) -> tuple:
        return tuple(sorted((a, b) for a, b in self.partner.items() if a < b))

    def __iter__(self):
        return iter(self.pairs())

    def __eq__(self, other):
        if not isinstance(other, Pairing):
            return NotImplemented
        return self.partner == other.partner

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.pairs())
        return self._hash

    def __repr__(self):
        return f"Pairing({list(self.pairs())})"

    def relabel(self, sigma) -> "Pairing":
        return Pairing.from_partner({sigma[a]: sigma[b] for a, b in self.partner.items()})


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    DIFFERENT_POLYGONS = "different_polygons"


class PolygonDecomposition:
    """The polygons of L(P1, P2).

    Each polygon is a tuple of labels ``(x0, x1, ...)`` with ``x1 = P1(x0)``,
    ``x2 = P2(x1)``, alternating, so consecutive labels are partners in the
    first and second pairing alternately.
    """

    __slots__ = ("polygons", "where", "type")

    def __init__(self, polygons):
        self.polygons = tuple(tuple(p) for p in polygons)
        self.where = {}
        for k, poly in enumerate(self.polygons):
            for i, x in enumerate(poly):
                self.where[x] = (k, i)
        self.type = Partition(len(p) // 2 for p in self.polygons)

    def __len__(self):
        return len(self.polygons)

    def polygon_of(self, label) -> tuple:
        return self.polygons[self.where[label][0]]

    def __repr__(self):
        return f"PolygonDecomposition({self.polygons})"


def polygons(B: Pairing, W: Pairing) -> PolygonDecomposition:
    b, w = B.partner, W.partner
    if b.keys() != w.keys():
        raise ValueError("pairings live on different supports")
    seen = set()
    out = []
    for s in sorted(b):
        if s in seen:
            continue
        poly = []
        cur, use_b = s, True
        while True:
            poly.append(cur)
            seen.add(cur)
            cur = b[cur] if use_b else w[cur]
            use_b = not use_b
            if cur == s:
                break
        out.append(poly)
    return PolygonDecomposition(out)


def position_parity(D: PolygonDecomposition, s1, s2) -> Parity:
    if s1 == s2:
        raise ValueError("labels must be distinct")
    try:
        k1, i1 = D.where[s1]
        k2, i2 = D.where[s2]
    except KeyError as exc:
        raise KeyError(f"label {exc.args[0]} not in decomposition") from None
    if k1 != k2:
        return Parity.DIFFERENT_POLYGONS
    between = abs(i1 - i2) - 1
    return Parity.EVEN if between % 2 == 0 else Parity.ODD


def remove_pair_partner(partner: dict, s1, s2) -> dict:
    """The removal operator on a raw partner dict (returns a new dict)."""
    out = dict(partner)
    t1 = out.pop(s1)
    if t1 == s2:
        del out[s2]
        return out
    t2 = out.pop(s2)
    out[t1] = t2
    out[t2] = t1
    return out


def remove_pair(P: Pairing, e) -> Pairing:
    """P_{s1,s2}: drop ``e`` if it is a pair of P, otherwise re-match the two orphaned partners."""
    s1, s2 = e
    if s1 == s2:
        raise ValueError("labels must be distinct")
    if s1 not in P.partner or s2 not in P.partner:
        raise KeyError(f"labels {e} outside the support")
    return Pairing.from_partner(remove_pair_partner(P.partner, s1, s2))


def canonical_base_pairings(pi) -> tuple:
    """Base couple (B, W) of type ``pi`` on labels 0 .. 2|pi|-1.

    Parts are processed largest first; a part r occupies 2r consecutive
    labels c_1..c_2r with B = {c1 c2}, {c3 c4}, ... and
    W = {c2 c3}, ..., {c_2r c1}.
    """
    pi = Partition(pi)
    b, w = {}, {}
    o = 0
    for r in pi:
        for i in range(r):
            x, y = o + 2 * i, o + 2 * i + 1
            b[x], b[y] = y, x
            z = o + (2 * i + 2) % (2 * r)
            w[y], w[z] = z, y
        o += 2 * r
    return Pairing.from_partner(b), Pairing.from_partner(w)


def all_pairings(labels):
    """All pairings of ``labels``: the smallest label is matched to each larger one in turn, recursively."""
    labels = sorted(labels)
    if len(labels) % 2:
        raise ValueError("odd number of labels")

    def rec(rest):
        if not rest:
            yield {}
            return
        first = rest[0]
        for i in range(1, len(rest)):
            other = rest[i]
            for sub in rec(rest[1:i] + rest[i + 1:]):
                sub = dict(sub)
                sub[first] = other
                sub[other] = first
                yield sub

    for partner in rec(labels):
        yield Pairing.from_partner(partner)


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


class LabelCodec:
    """Bijection between user-facing label tokens (``"1"``, ``"10"``, ``"A"``) and dense integers.

    Numeric tokens come first in numeric order, then the others alphabetically,
    so the labels 1..10, A..D of the printed examples map to 0..13.
    """

    def __init__(self, tokens):
        toks = sorted(set(tokens), key=lambda t: (0, int(t), "") if t.isdigit() else (1, 0, t))
        self.tokens = tuple(toks)
        self.to_int = {t: i for i, t in enumerate(toks)}

    def encode(self, token: str) -> int:
        return self.to_int[token]

    def decode(self, label: int) -> str:
        return self.tokens[label]


_PAIR_RE = re.compile(r"^\s*([0-9A-Za-z]+)\s*-\s*([0-9A-Za-z]+)\s*$")


def parse_pair_tokens(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    out = []
    for chunk in text.split(","):
        m = _PAIR_RE.match(chunk)
        if not m:
            raise ValueError(f"bad pair {chunk!r}; expected e.g. '1-2'")
        out.append((m.group(1), m.group(2)))
    return out


def parse_pairing(text: str, codec: LabelCodec | None = None) -> Pairing:
    """Parse ``"1-2,3-4"``.  Without a codec the tokens must be integers and are used as they are."""
    pairs = parse_pair_tokens(text)
    if codec is None:
        return Pairing((int(a), int(b)) for a, b in pairs)
    return Pairing((codec.encode(a), codec.encode(b)) for a, b in pairs)


def format_pairing(P: Pairing, codec: LabelCodec | None = None) -> str:
    dec = (lambda x: str(x)) if codec is None else codec.decode
    return ",".join(f"{dec(a)}-{dec(b)}" for a, b in P.pairs())
