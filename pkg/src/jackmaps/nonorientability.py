"""Edge weights, history weights and the measure of non-orientability.

The mean over all n! histories is computed by conditioning on the first
removed edge: a uniform linear order is a uniform first element followed by
a uniform order of the rest, hence

    omega_M = (1/n) * sum_e weight(M, e) * omega_{M minus e}.

The recursion runs on raw partner dicts and is memoized either by a
relabeling-invariant key, by the labeled triple, or not at all.  All three
modes give identical results; the memo never evicts.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import permutations

from .algebra import GammaPoly
from .maps import EdgeKind, Map, canonical_key_from_partners
from .pairings import Pairing, remove_pair_partner

MEMO_CAP_ENV = "JACKMAPS_MEMO_CAP"
MEMO_MODES = ("canonical", "labeled", "off")

ONE = GammaPoly.constant(1)
GAMMA = GammaPoly.gamma()
HALF = GammaPoly.constant(Fraction(1, 2))

# (straight, twisted, interface); None marks a pruned (zero) weight
POLY_WEIGHTS = (ONE, GAMMA, HALF)
ZERO_GAMMA_WEIGHTS = (Fraction(1), None, Fraction(1, 2))


def edge_weight(M: Map, e) -> GammaPoly:
    kind = M.edge_kind(e)
    if kind is EdgeKind.STRAIGHT:
        return ONE
    if kind is EdgeKind.TWISTED:
        return GAMMA
    return HALF


def _check_history(M: Map, h):
    edges = [tuple(sorted(e)) for e in h]
    if sorted(edges) != list(M.edges()) or len(set(edges)) != len(edges):
        raise ValueError("a history must list every edge of the map exactly once")
    return edges


def _raw_history_weight(b, w, e, h):
    out = ONE
    for s1, s2 in h:
        where = _face_where(b, w)
        f1, i1 = where[s1]
        f2, i2 = where[s2]
        if f1 != f2:
            out = out * HALF
        elif (abs(i1 - i2) - 1) % 2:
            out = out * GAMMA
        b, w, e = (remove_pair_partner(x, s1, s2) for x in (b, w, e))
    return out


def history_weight(M: Map, h) -> GammaPoly:
    """Product of the edge weights as the edges are removed in the order ``h``."""
    h = _check_history(M, h)
    return _raw_history_weight(M.B.partner, M.W.partner, M.E.partner, h)


def history_weights(M: Map):
    """Yield ``(history, weight)`` for all n! histories."""
    b, w, e = M.B.partner, M.W.partner, M.E.partner
    for h in permutations(M.edges()):
        yield h, _raw_history_weight(b, w, e, h)


def mean_weight_naive(M: Map) -> GammaPoly:
    total = GammaPoly()
    count = 0
    for _, w in history_weights(M):
        total = total + w
        count += 1
    return total / count


class WeightMemo:
    """Insert-only memo table.  Past ``cap`` entries new values are simply not stored."""

    def __init__(self, mode="canonical", cap=None):
        if mode not in MEMO_MODES:
            raise ValueError(f"memo mode must be one of {MEMO_MODES}")
        if cap is None:
            env = os.environ.get(MEMO_CAP_ENV)
            cap = int(env) if env else None
        self.mode = mode
        self.cap = cap
        self.table = {}
        self.hits = 0
        self.misses = 0

    def key(self, b, w, e):
        if self.mode == "canonical":
            return canonical_key_from_partners(b, w, e)
        if self.mode == "labeled":
            return (frozenset(b.items()), frozenset(w.items()), frozenset(e.items()))
        return None

    def get(self, key):
        if key is None:
            return None
        v = self.table.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key, value):
        if key is None or key in self.table:
            return
        if self.cap is not None and len(self.table) >= self.cap:
            return
        self.table[key] = value

    def __len__(self):
        return len(self.table)


_shared = {}


def shared_memo(mode="canonical", weights="poly") -> WeightMemo:
    """Process-wide memo per (mode, weight set)."""
    k = (mode, weights)
    if k not in _shared:
        _shared[k] = WeightMemo(mode)
    return _shared[k]


def clear_shared_memos():
    _shared.clear()


def _face_where(b, w):
    where = {}
    fid = 0
    for s in b:
        if s in where:
            continue
        cur, use_b, i = s, True, 0
        while True:
            where[cur] = (fid, i)
            i += 1
            cur = b[cur] if use_b else w[cur]
            use_b = not use_b
            if cur == s:
                break
        fid += 1
    return where


def _recursive_mean(b, w, e, weights, memo, zero):
    if not e:
        return weights[0]
    key = memo.key(b, w, e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    where = _face_where(b, w)
    straight, twisted, interface = weights
    total = zero
    n = 0
    for s1, s2 in e.items():
        if s1 > s2:
            continue
        n += 1
        f1, i1 = where[s1]
        f2, i2 = where[s2]
        if f1 != f2:
            wt = interface
        elif (abs(i1 - i2) - 1) % 2 == 0:
            wt = straight
        else:
            wt = twisted
        if wt is None:
            continue
        sub = _recursive_mean(
            remove_pair_partner(b, s1, s2),
            remove_pair_partner(w, s1, s2),
            remove_pair_partner(e, s1, s2),
            weights, memo, zero,
        )
        total = total + wt * sub
    value = total / n
    memo.put(key, value)
    return value


def mean_weight(M: Map, memo="canonical", method="recursive") -> GammaPoly:
    """omega_M as a polynomial in gamma.

    ``memo`` is a mode name (a shared table is used) or a :class:`WeightMemo`.
    ``method="naive"`` averages all n! histories instead.
    """
    if method == "naive":
        return mean_weight_naive(M)
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    if not isinstance(memo, WeightMemo):
        memo = shared_memo(memo, "poly")
    if M.n_edges == 0:
        return ONE
    return _recursive_mean(M.B.partner, M.W.partner, M.E.partner, POLY_WEIGHTS, memo, GammaPoly())


def mean_weight_at_zero(M: Map, memo="canonical") -> Fraction:
    """omega_M(0), pruning every branch that removes a twisted edge."""
    if not isinstance(memo, WeightMemo):
        memo = shared_memo(memo, "zero")
    if M.n_edges == 0:
        return Fraction(1)
    return _recursive_mean(M.B.partner, M.W.partner, M.E.partner, ZERO_GAMMA_WEIGHTS, memo, Fraction(0))


# ---------------------------------------------------------------------------
# Single-history weight
# ---------------------------------------------------------------------------


def lacroix_history(M: Map):
    """The history used by :func:`lacroix_weight`, with a trace of the rounds.

    Each round starts at the smallest label ``s0`` among the edges not yet
    removed and lists the edges containing s0, (E o W)(s0), (E o W)^2(s0), ...
    until the orbit returns to s0, skipping edges already listed.  The orbit
    is taken in the pairings of the map as it stands at the start of the
    round.  Returns ``(history, trace)`` where ``trace`` is a list of
    ``{"start": s0, "orbit": [...], "removed": [...]}``.
    """
    history = []
    trace = []
    removed = set()
    cur = M
    while cur.n_edges:
        e, w = cur.E.partner, cur.W.partner
        s0 = min(e)
        orbit = [s0]
        x = e[w[s0]]
        while x != s0:
            orbit.append(x)
            x = e[w[x]]
        got = []
        for x in orbit:
            edge = tuple(sorted((x, e[x])))
            if edge in removed:
                continue
            removed.add(edge)
            got.append(edge)
        for edge in got:
            cur = cur.remove_edge(edge)
        history.extend(got)
        trace.append({"start": s0, "orbit": orbit, "removed": got})
    return history, trace


def lacroix_weight(M: Map) -> GammaPoly:
    h, _ = lacroix_history(M)
    return history_weight(M, h)


# ---------------------------------------------------------------------------
# Degree and parity bookkeeping
# ---------------------------------------------------------------------------


def special_alpha_exponent(M: Map) -> int:
    """ell(pi) - |V(M)| + |pi| for the face-type pi of M."""
    pi = M.face_type
    return pi.length - M.n_vertices + pi.size


SPECIAL_MODULUS = GammaPoly((-1, 0, 2))  # 2 gamma^2 - 1


def reduce_special(poly: GammaPoly) -> GammaPoly:
    return poly % SPECIAL_MODULUS


def weight_from_json(data) -> GammaPoly:
    return GammaPoly.from_json(data)


def empty_map() -> Map:
    return Map(Pairing(), Pairing(), Pairing())
