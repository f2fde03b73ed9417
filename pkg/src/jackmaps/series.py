"""The orientability generating series, numerically and symbolically.

Numeric value for a face-type pi, a diagram lambda and a rational alpha:

    (-1)^{l(pi)} sum_M (-1/sqrt(alpha))^{|V_black|} sqrt(alpha)^{|V_white|} omega_M(gamma) N_M(lambda).

Symbolic form: with u_i = p_i/sqrt(alpha), v_i = -sqrt(alpha) q_i and g = -gamma,

    (-1)^{|pi|} * series = sum_M omega_M(g) N_M(u, v),

which follows from the homogeneity of N_M and from omega_M having the parity
of chi(M) = |V| - |pi| + l(pi).  Every coefficient is then visibly >= 0.

Maps are aggregated by the isomorphism class of their bipartite graph (which
is all that N_M and the vertex counts see) before any polynomial is built.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GammaPoly, MultivarPoly, QuadExt, gamma_poly_eval, gamma_value
from .embeddings import (
    BipartiteGraph,
    _cached_exponents,
    canonical_graph_key,
    count_embeddings,
    graph_from_key,
    multirect_variables,
)
from .maps import enumerate_maps, map_count, shard_prefixes
from .nonorientability import WeightMemo, lacroix_weight, mean_weight
from .identities import parts1_sides, rect_recurrence_sides
from .partition import Partition

DEFAULT_MAX_SIZE = 7
EXTENDED_MAX_SIZE = 9
WEIGHTS = ("mean", "lacroix")


class ResourceLimitError(RuntimeError):
    def __init__(self, pi, limit):
        pi = Partition(pi)
        self.pi = pi
        self.limit = limit
        self.maps = map_count(pi)
        super().__init__(
            f"|pi| = {pi.size} exceeds the limit {limit}: {self.maps} maps would be enumerated"
        )


def check_limit(pi, limit=DEFAULT_MAX_SIZE):
    if limit is not None and Partition(pi).size > limit:
        raise ResourceLimitError(pi, limit)


# ---------------------------------------------------------------------------
# Aggregation over maps
# ---------------------------------------------------------------------------


def _map_weight(M, weight, memo):
    if weight == "mean":
        return mean_weight(M, memo=memo)
    if weight == "lacroix":
        return lacroix_weight(M)
    raise ValueError(f"unknown weight {weight!r}; expected one of {WEIGHTS}")


def _aggregate_shard(args):
    pi, weight, memo_mode, prefix = args
    memo = WeightMemo(memo_mode)
    out = {}
    for M in enumerate_maps(pi, prefix):
        w = _map_weight(M, weight, memo)
        key = canonical_graph_key(BipartiteGraph.from_map(M))
        prev = out.get(key)
        out[key] = w if prev is None else prev + w
    return out


def _merge(parts):
    out = {}
    for part in parts:
        for k, w in part.items():
            prev = out.get(k)
            out[k] = w if prev is None else prev + w
    return dict(sorted(out.items(), key=lambda kv: repr(kv[0])))


_aggregates = {}


def aggregate(pi, weight="mean", memo="canonical", jobs=1, limit=DEFAULT_MAX_SIZE) -> dict:
    """graph key -> sum of the weights of the maps of face-type pi with that graph.

    Shards are the possible partners of label 0; the merged table does not
    depend on ``jobs``.
    """
    pi = Partition(pi)
    check_limit(pi, limit)
    ck = (pi, weight)
    if ck in _aggregates:
        return _aggregates[ck]
    if not pi:
        result = {(0, ()): GammaPoly.constant(1)}
    else:
        shards = [(pi, weight, memo, x) for x in shard_prefixes(pi)]
        if jobs and jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                parts = list(ex.map(_aggregate_shard, shards))
        else:
            parts = [_aggregate_shard(s) for s in shards]
        result = _merge(parts)
    for key, w in result.items():
        nb, sets = key
        chi = nb + len(sets) - pi.size + pi.length
        if w and not (w.is_even() if chi % 2 == 0 else w.is_odd()):
            raise AssertionError(f"weight parity violated for graph {key} of face-type {pi}")
    _aggregates[ck] = result
    return result


def clear_caches():
    _aggregates.clear()
    _symbolic.clear()


# ---------------------------------------------------------------------------
# Symbolic series
# ---------------------------------------------------------------------------


def series_variables(ell: int) -> tuple:
    return multirect_variables(ell, "u", "v") + ("g",)


@dataclass
class SeriesValue:
    """(-1)^{|pi|} times the series on P x Q, as a polynomial in u_i, v_i and g = -gamma."""

    pi: Partition
    ell: int
    poly: MultivarPoly
    weight: str = "mean"
    convention: str = "u_i = p_i/sqrt(alpha), v_i = -sqrt(alpha) q_i, g = -gamma, global sign (-1)^|pi|"
    mode: str = field(default="symbolic")

    def bindings(self, P, Q, alpha):
        alpha = Fraction(alpha)
        s = QuadExt.s(alpha)
        b = {}
        for i in range(self.ell):
            b[f"u_{i + 1}"] = s * Fraction(P[i]) / alpha
            b[f"v_{i + 1}"] = -(s * Fraction(Q[i]))
        b["g"] = -gamma_value(alpha)
        return b

    def evaluate(self, P, Q, alpha) -> QuadExt:
        """Numeric series value at the multirectangular point (P, Q)."""
        if len(P) != self.ell or len(Q) != self.ell:
            raise ValueError(f"expected {self.ell} multirectangular coordinates")
        v = self.poly.substitute(self.bindings(P, Q, alpha))
        if not isinstance(v, QuadExt):
            v = QuadExt(alpha, v)
        return -v if self.pi.size % 2 else v

    def specialize(self, alpha) -> MultivarPoly:
        """The series itself as a polynomial in p_i, q_i with coefficients in Q(sqrt(alpha))."""
        alpha = Fraction(alpha)
        s = QuadExt.s(alpha)
        ell = self.ell
        u, v, g = s / alpha, -s, -gamma_value(alpha)
        sign = -1 if self.pi.size % 2 else 1
        out = MultivarPoly(multirect_variables(ell))
        pw = {}

        def power(x, k, tag):
            key = (tag, k)
            if key not in pw:
                pw[key] = x ** k
            return pw[key]

        for exps, c in self.poly.terms.items():
            a = sum(exps[:ell])
            b = sum(exps[ell:2 * ell])
            k = exps[2 * ell]
            coeff = power(u, a, "u") * power(v, b, "v") * power(g, k, "g") * (c * sign)
            out.add_term(exps[:2 * ell], coeff)
        return out

    def coefficients_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.poly.terms.values())

    def to_json(self) -> dict:
        return {
            "pi": list(self.pi),
            "ell": self.ell,
            "weight": self.weight,
            "variables": list(self.poly.variables),
            "convention": self.convention,
            "terms": self.poly.to_json(),
        }


_symbolic = {}


def genseries_symbolic(pi, ell: int, weight="mean", memo="canonical", jobs=1, limit=DEFAULT_MAX_SIZE) -> SeriesValue:
    pi = Partition(pi)
    if ell < 1:
        raise ValueError("ell must be at least 1")
    ck = (pi, ell, weight)
    if ck in _symbolic:
        return _symbolic[ck]
    agg = aggregate(pi, weight, memo=memo, jobs=jobs, limit=limit)
    variables = series_variables(ell)
    terms = {}
    for key, w in agg.items():
        if not w:
            continue
        for e, cnt in _cached_exponents(key, ell).items():
            for k, c in enumerate(w.coeffs):
                if c:
                    t = e + (k,)
                    terms[t] = terms.get(t, 0) + cnt * c
    val = SeriesValue(pi, ell, MultivarPoly(variables, terms), weight)
    _symbolic[ck] = val
    return val


# ---------------------------------------------------------------------------
# Numeric series
# ---------------------------------------------------------------------------


def _vertex_factor(nb, nw, alpha):
    s = QuadExt.s(alpha)
    inv = s / alpha
    return (-inv) ** nb * s ** nw


def genseries_numeric(pi, lam, alpha, weight="mean", method="symbolic", memo="canonical",
                      jobs=1, limit=DEFAULT_MAX_SIZE) -> QuadExt:
    """Exact series value at the diagram ``lam``.

    ``method="symbolic"`` evaluates the multirectangular polynomial with one
    block per distinct row length; ``method="direct"`` sums the defining
    expression graph by graph with numerically counted embeddings.
    """
    pi = Partition(pi)
    lam = Partition(lam)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not pi:
        return QuadExt(alpha, 1)
    if not lam:
        return QuadExt(alpha, 0)
    if method == "symbolic":
        P, Q = lam.multirect()
        return genseries_symbolic(pi, len(P), weight, memo, jobs, limit).evaluate(P, Q, alpha)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    total = QuadExt(alpha, 0)
    for key, w in aggregate(pi, weight, memo, jobs, limit).items():
        n = count_embeddings(graph_from_key(key), lam)
        if n:
            nb, sets = key
            total = total + _vertex_factor(nb, len(sets), alpha) * gamma_poly_eval(w, alpha) * n
    return -total if pi.length % 2 else total


def genseries_multirect(pi, P, Q, alpha, weight="mean", **kw) -> QuadExt:
    """Series at an arbitrary multirectangular point (no ordering of Q required)."""
    return genseries_symbolic(Partition(pi), len(P), weight, **kw).evaluate(P, Q, alpha)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------


def verify_parts1_identity(pi, l, lam, alpha, F=None) -> bool:
    lhs, rhs = parts1_sides(pi, l, lam, alpha, F or genseries_numeric)
    return lhs == rhs


def verify_rect_recurrence(pi, p, q, alpha, F=None) -> bool:
    lhs, rhs = rect_recurrence_sides(pi, p, q, alpha, F or genseries_numeric)
    return lhs == rhs


def special_alpha_closed_form(pi, lam, which) -> QuadExt:
    """The map sum at alpha in {2, 1/2} with the closed-form weight depending only on vertex counts."""
    which = Fraction(which)
    pi, lam = Partition(pi), Partition(lam)
    s = QuadExt.s(Fraction(2))
    inv = s / 2
    if which == 2:
        cb, cw, ce = -inv, s, -inv
    elif which == Fraction(1, 2):
        cb, cw, ce = -s, inv, inv
    else:
        raise ValueError("closed forms exist for alpha = 2 and alpha = 1/2 only")
    if not pi:
        return QuadExt(2, 1)
    counts = {}
    for M in enumerate_maps(pi):
        key = canonical_graph_key(BipartiteGraph.from_map(M))
        counts[key] = counts.get(key, 0) + 1
    total = QuadExt(2, 0)
    for key, c in counts.items():
        nb, sets = key
        n = count_embeddings(graph_from_key(key), lam)
        if n:
            total = total + cb ** nb * cw ** len(sets) * ce ** (pi.size + pi.length - nb - len(sets)) * (c * n)
    total = -total if pi.length % 2 else total
    # values in Q(sqrt 2) are identical for alpha = 2 and alpha = 1/2 up to the base
    return total if which == 2 else total.rebase(which)
