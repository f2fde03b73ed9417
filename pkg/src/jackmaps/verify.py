"""Named verification suites producing deterministic reports.

Every suite takes keyword parameters controlling its range; the defaults are
the full acceptance ranges.  Case order is fixed, values are exact strings,
and timing is kept out of the serialized report unless asked for.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import GammaPoly
from .embeddings import BipartiteGraph, brute_force_embeddings, count_embeddings, symbolic_multirect
from .jack import (
    character,
    character_multirect,
    duality_sides,
    jack_powersum,
    sn_normalized_character,
    theta,
)
from .identities import parts1_sides, rect_recurrence_sides
from .maps import EdgeKind, Map, enumerate_maps, parse_map
from .nonorientability import (
    SPECIAL_MODULUS,
    history_weight,
    history_weights,
    lacroix_weight,
    mean_weight,
    mean_weight_naive,
    special_alpha_exponent,
)
from .partition import Partition, partitions_of, partitions_up_to
from .series import (
    genseries_numeric,
    genseries_symbolic,
    special_alpha_closed_form,
)

KLEIN_MAP = "B:0-1,2-3,4-5|W:0-5,1-2,3-4|E:0-2,1-4,3-5"
KLEIN_HISTORIES = (("1-4", "0-2", "3-5"), ("0-2", "1-4", "3-5"))
FIG_MAP = "B:1-2,3-4,5-6,7-8,9-10,A-B,C-D|W:2-3,4-5,6-7,8-9,10-1,B-C,D-A|E:1-3,2-10,4-9,5-D,6-C,7-B,8-A"


def _fmt(v):
    if isinstance(v, bool) or v is None:
        return v
    return str(v)


@dataclass
class Case:
    descriptor: str
    passed: bool
    left: object = None
    right: object = None

    def to_json(self):
        return {
            "case": self.descriptor,
            "status": "pass" if self.passed else "fail",
            "left": _fmt(self.left),
            "right": _fmt(self.right),
        }


@dataclass
class VerificationReport:
    suite: str
    config: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, descriptor, left, right=None, passed=None):
        if passed is None:
            passed = left == right
        self.cases.append(Case(descriptor, bool(passed), left, right))
        return passed

    @property
    def failures(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self, timing=False) -> dict:
        out = {
            "suite": self.suite,
            "config": {k: _fmt(v) if not isinstance(v, (list, tuple)) else [_fmt(x) for x in v]
                       for k, v in self.config.items()},
            "status": "pass" if self.passed else "fail",
            "cases": len(self.cases),
            "failures": self.failures,
            "results": [c.to_json() for c in self.cases],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status} ({len(self.cases) - self.failures}/{len(self.cases)} cases)"


def _alphas(xs):
    return [Fraction(x) for x in xs]


def _pairs(text):
    return [tuple(t.split("-")) for t in text]


# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------


def suite_examples(report: VerificationReport):
    M, codec = parse_map(KLEIN_MAP)
    enc = codec.encode
    hist = [[tuple(sorted((enc(a), enc(b)))) for a, b in _pairs(h)] for h in KLEIN_HISTORIES]
    report.add("klein history A<B<C", history_weight(M, hist[0]), GammaPoly.constant(Fraction(1, 2)))
    report.add("klein history B<A<C", history_weight(M, hist[1]), GammaPoly((0, 0, 1)))
    report.add("klein omega", mean_weight(M), GammaPoly((Fraction(1, 6), 0, Fraction(2, 3))))
    F, codec = parse_map(FIG_MAP)
    enc = codec.encode
    for e, kind in (("4-9", EdgeKind.STRAIGHT), ("1-3", EdgeKind.TWISTED), ("6-C", EdgeKind.INTERFACE)):
        a, b = e.split("-")
        edge = tuple(sorted((enc(a), enc(b))))
        report.add(f"figure edge {{{a},{b}}}", F.edge_kind(edge).value, kind.value)


# ---------------------------------------------------------------------------
# Map lemmas
# ---------------------------------------------------------------------------


def expected_face_type(M: Map, e) -> Partition:
    """Face-type after removing ``e``, predicted from its position in the faces."""
    pi = M.face_type
    where = M.faces.where
    (f1, i1), (f2, i2) = where[e[0]], where[e[1]]
    sizes = [len(p) // 2 for p in M.faces.polygons]
    if f1 != f2:
        return pi.join(sizes[f1], sizes[f2])
    r = sizes[f1]
    gap = abs(i1 - i2)
    if (gap - 1) % 2:
        return pi.down(r)
    a = (gap - 1) // 2
    return pi.up(a, r - 1 - a)


def _ok_parity(w: GammaPoly, chi: int) -> bool:
    return w.is_even() if chi % 2 == 0 else w.is_odd()


def suite_lemmas(report: VerificationReport, max_size=5):
    report.config["max_size"] = max_size
    for n in range(1, max_size + 1):
        for pi in partitions_of(n):
            bad = {"leaf": 0, "bridge": 0, "faces": 0, "commute": 0, "degree": 0}
            count = 0
            for M in enumerate_maps(pi):
                count += 1
                edges = M.edges()
                for e in edges:
                    kind, bl, wl = M.classify_edge(e)
                    if (bl or wl) and kind is not EdgeKind.STRAIGHT:
                        bad["leaf"] += 1
                    if M.is_bridge(e) and kind is not EdgeKind.STRAIGHT:
                        bad["bridge"] += 1
                    if M.remove_edge(e).face_type != expected_face_type(M, e):
                        bad["faces"] += 1
                for e1, e2 in combinations(edges, 2):
                    if M.remove_edge(e1).remove_edge(e2) != M.remove_edge(e2).remove_edge(e1):
                        bad["commute"] += 1
                w = mean_weight(M)
                if w.degree > M.d or not _ok_parity(w, M.euler_characteristic):
                    bad["degree"] += 1
            for k, v in bad.items():
                report.add(f"{k} pi={pi} ({count} maps)", v, 0)


def suite_recursion(report: VerificationReport, max_edges=5):
    report.config["max_edges"] = max_edges
    for n in range(1, max_edges + 1):
        for pi in partitions_of(n):
            bad = 0
            count = 0
            for M in enumerate_maps(pi):
                count += 1
                if mean_weight(M) != mean_weight_naive(M):
                    bad += 1
            report.add(f"recursion = naive, pi={pi} ({count} maps)", bad, 0)


def suite_history_degree(report: VerificationReport, max_edges=5):
    """Degree and parity bounds for every single history weight."""
    report.config["max_edges"] = max_edges
    for n in range(1, max_edges + 1):
        for pi in partitions_of(n):
            bad = 0
            for M in enumerate_maps(pi):
                d, chi = M.d, M.euler_characteristic
                for _, w in history_weights(M):
                    if w.degree > d or not _ok_parity(w, chi):
                        bad += 1
            report.add(f"history degree/parity pi={pi}", bad, 0)


def suite_special_alpha(report: VerificationReport, max_edges=5, max_lambda=6):
    report.config.update(max_edges=max_edges, max_lambda=max_lambda)
    for n in range(1, max_edges + 1):
        for pi in partitions_of(n):
            bad = 0
            for M in enumerate_maps(pi):
                target = GammaPoly.monomial(1, special_alpha_exponent(M)) % SPECIAL_MODULUS
                for _, w in history_weights(M):
                    if w % SPECIAL_MODULUS != target:
                        bad += 1
            report.add(f"histories mod 2gamma^2-1, pi={pi}", bad, 0)
    for n in range(1, max_edges + 1):
        for pi in partitions_of(n):
            for which in (Fraction(2), Fraction(1, 2)):
                bad = 0
                for lam in partitions_up_to(max_lambda):
                    if genseries_numeric(pi, lam, which) != special_alpha_closed_form(pi, lam, which):
                        bad += 1
                report.add(f"closed form alpha={which}, pi={pi}", bad, 0)


# ---------------------------------------------------------------------------
# Series against the oracle
# ---------------------------------------------------------------------------


MAIN_ALPHAS = ("1/2", "1", "2", "3", "5/3")


def _compare_grid(report, pi, lams, alphas, weight="mean"):
    bad = []
    for alpha in alphas:
        for lam in lams:
            a = genseries_numeric(pi, lam, alpha, weight=weight)
            b = character(pi, lam, alpha)
            if a != b:
                bad.append((lam, alpha, a, b))
    desc = f"{'omega' if weight == 'mean' else 'omega prime'} series = Ch, pi={pi}, {len(lams) * len(alphas)} points"
    if bad:
        lam, alpha, a, b = bad[0]
        report.add(desc + f", first mismatch lambda={lam} alpha={alpha}", a, b, passed=False)
    else:
        report.add(desc, len(bad), 0)


def suite_main(report: VerificationReport, max_size=6, max_lambda=7, alphas=MAIN_ALPHAS, weight="mean"):
    alphas = _alphas(alphas)
    report.config.update(max_size=max_size, max_lambda=max_lambda, alphas=alphas, weight=weight)
    lams = [lam for lam in partitions_up_to(max_lambda) if lam]
    for n in range(0, max_size + 1):
        for pi in partitions_of(n):
            _compare_grid(report, pi, lams, alphas, weight)


def suite_lacroix(report: VerificationReport, max_size=6, max_lambda=7, alphas=("1/2", "1", "2", "3")):
    suite_main(report, max_size, max_lambda, alphas, weight="lacroix")
    for n in (1, 2):
        for pi in partitions_of(n):
            bad = sum(1 for M in enumerate_maps(pi) if lacroix_weight(M) != mean_weight(M))
            report.add(f"omega prime = omega on maps with {n} edges, pi={pi}", bad, 0)


def rectangular_alpha_span(pi, series) -> tuple:
    """(lo, hi) exponents of alpha in alpha^{(|pi|-l)/2} times either side.

    The oracle side is a polynomial of degree <= |pi| - l(pi) in alpha.  A
    series term u^a v^b g^k contributes alpha^{(b-a-k+|pi|-l)/2} (alpha-1)^k.
    """
    pi = Partition(pi)
    e = pi.size - pi.length
    lo, hi = 0, e
    for exps in series.poly.terms:
        a, b, k = exps[0], exps[1], exps[2]
        t = b - a - k + e
        if t % 2:
            raise ArithmeticError("series term of the wrong parity")
        lo = min(lo, t // 2)
        hi = max(hi, t // 2 + k)
    return lo, hi


def suite_rectangular(report: VerificationReport, max_size=6):
    """Both sides are Laurent polynomials in alpha after normalization, so
    agreeing at hi - lo + 1 distinct alphas forces equality for all alpha."""
    report.config["max_size"] = max_size
    for n in range(1, max_size + 1):
        for pi in partitions_of(n):
            series = genseries_symbolic(pi, 1)
            lo, hi = rectangular_alpha_span(pi, series)
            alphas = [Fraction(j) for j in range(1, hi - lo + 2)]
            bad = []
            for alpha in alphas:
                a = series.specialize(alpha)
                b = character_multirect(pi, 1, alpha)
                if a != b:
                    bad.append((alpha, a, b))
            desc = f"rectangular series = Ch symbolic, pi={pi}, {len(alphas)} alphas"
            if bad:
                report.add(desc + f", first mismatch alpha={bad[0][0]}", bad[0][1], bad[0][2], passed=False)
            else:
                report.add(desc, 0, 0)


def suite_recurrences(report: VerificationReport, max_size=6, max_pq=3, alphas=("1/2", "1", "2")):
    alphas = _alphas(alphas)
    report.config.update(max_size=max_size, max_pq=max_pq, alphas=alphas)
    for n in range(2, max_size + 1):
        for pi in partitions_of(n):
            if pi.m(1):
                continue
            for name, F in (("oracle", character), ("series", genseries_numeric)):
                bad = 0
                for alpha in alphas:
                    for p in range(1, max_pq + 1):
                        for q in range(1, max_pq + 1):
                            lhs, rhs = rect_recurrence_sides(pi, p, q, alpha, F)
                            if lhs != rhs:
                                bad += 1
                report.add(f"{name} recurrence pi={pi}", bad, 0)


def suite_parts1(report: VerificationReport, max_size=4, max_l=2, max_lambda=7,
                 alphas=("1/2", "1", "2", "7/3")):
    alphas = _alphas(alphas)
    report.config.update(max_size=max_size, max_l=max_l, max_lambda=max_lambda, alphas=alphas)
    lams = [lam for lam in partitions_up_to(max_lambda) if lam]
    for name, F, lam_cap in (("oracle", character, max_lambda), ("series", genseries_numeric, min(max_lambda, 6))):
        for n in range(0, max_size + 1):
            for pi in partitions_of(n):
                bad = 0
                for l in range(1, max_l + 1):
                    for alpha in alphas:
                        for lam in lams:
                            if lam.size > lam_cap:
                                continue
                            lhs, rhs = parts1_sides(pi, l, lam, alpha, F)
                            if lhs != rhs:
                                bad += 1
                report.add(f"{name} parts equal to 1, pi={pi}", bad, 0)


def suite_duality(report: VerificationReport, max_lambda=7, alphas=("2", "3", "7/2")):
    alphas = _alphas(alphas)
    report.config.update(max_lambda=max_lambda, alphas=alphas)
    for n in range(1, max_lambda + 1):
        bad = 0
        for lam in partitions_of(n):
            for k in range(1, n + 1):
                for pi in partitions_of(k):
                    for alpha in alphas:
                        lhs, rhs = duality_sides(pi, lam, alpha)
                        if lhs != rhs:
                            bad += 1
        report.add(f"duality |lambda|={n}", bad, 0)


def suite_positivity(report: VerificationReport, max_size=5, max_ell=3):
    report.config.update(max_size=max_size, max_ell=max_ell)
    for n in range(1, max_size + 1):
        for pi in partitions_of(n):
            for ell in range(1, max_ell + 1):
                series = genseries_symbolic(pi, ell)
                neg = sum(1 for c in series.poly.terms.values() if c < 0)
                report.add(f"non-negative coefficients pi={pi} ell={ell} ({len(series.poly)} terms)", neg, 0)


def suite_oracle(report: VerificationReport, max_lambda=7):
    report.config["max_lambda"] = max_lambda
    J2 = jack_powersum((2,))
    J11 = jack_powersum((1, 1))
    report.add("J_(2) coefficient of p_1^2", J2[Partition((1, 1))], GammaPoly.constant(1))
    report.add("J_(2) coefficient of p_2", J2[Partition((2,))], GammaPoly((0, 1)))
    report.add("J_(1,1) coefficient of p_1^2", J11[Partition((1, 1))], GammaPoly.constant(1))
    report.add("J_(1,1) coefficient of p_2", J11[Partition((2,))], GammaPoly.constant(-1))
    report.add("theta_(2)((1,1))", theta((2,), (1, 1)), GammaPoly.constant(-1))
    for n in range(1, max_lambda + 1):
        bad = 0
        for lam in partitions_of(n):
            for k in range(1, n + 1):
                for pi in partitions_of(k):
                    if character(pi, lam, 1) != sn_normalized_character(pi, lam):
                        bad += 1
        report.add(f"alpha=1 characters vs symmetric group, |lambda|={n}", bad, 0)


def suite_embeddings(report: VerificationReport, max_size=4, max_lambda=6):
    report.config.update(max_size=max_size, max_lambda=max_lambda)
    for n in range(1, max_size + 1):
        for pi in partitions_of(n):
            bad = 0
            for M in enumerate_maps(pi):
                G = BipartiteGraph.from_map(M)
                sym = {ell: symbolic_multirect(G, ell) for ell in (1, 2, 3)}
                for lam in partitions_up_to(max_lambda):
                    if not lam:
                        continue
                    c = count_embeddings(G, lam)
                    if c != brute_force_embeddings(G, lam):
                        bad += 1
                    if count_embeddings(G.swap_colors(), lam) != count_embeddings(G, lam.conjugate()):
                        bad += 1
                    P, Q = lam.multirect()
                    if len(P) in sym:
                        b = dict(zip(sym[len(P)].variables, P + Q))
                        if sym[len(P)].substitute(b) != c:
                            bad += 1
            report.add(f"embedding counts pi={pi}", bad, 0)


SUITES = {
    "examples": (suite_examples, "worked example and edge classification"),
    "lemmas-small": (suite_lemmas, "leaf, bridge, face arithmetic, commutativity, degree and parity"),
    "recursion": (suite_recursion, "memoized recursion against the n! average"),
    "history-degree": (suite_history_degree, "degree and parity of every history weight"),
    "special-alpha": (suite_special_alpha, "history independence and closed forms at alpha 2 and 1/2"),
    "embeddings": (suite_embeddings, "embedding counts against brute force"),
    "main": (suite_main, "series against the Jack characters"),
    "rectangular": (suite_rectangular, "rectangular diagrams symbolically"),
    "recurrences": (suite_recurrences, "rectangular recurrence for both sides"),
    "parts1": (suite_parts1, "parts equal to 1"),
    "duality": (suite_duality, "duality of the oracle"),
    "positivity": (suite_positivity, "non-negative coefficients"),
    "oracle": (suite_oracle, "oracle self-checks"),
    "lacroix": (suite_lacroix, "series with the single-history weight"),
}


def run_suite(name: str, **params) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    fn, _ = SUITES[name]
    report = VerificationReport(name)
    start = time.perf_counter()
    fn(report, **params)
    report.seconds = time.perf_counter() - start
    return report
