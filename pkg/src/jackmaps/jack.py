"""Jack polynomials in the power-sum basis and Jack characters.

Reference construction at a fixed rational alpha: Gram-Schmidt on the
monomial basis, processing partitions in increasing lexicographic order (a
linear extension of dominance), for the scalar product
<p_rho, p_sigma> = delta * z_rho * alpha^l(rho); then J is normalised by
[m_{1^n}] J = n!, i.e. [p_{1^n}] J = 1.  Coefficients as polynomials in alpha
are recovered by interpolation and checked at extra nodes.

Characters on large diagrams use the derivative in p_1,

    d/dp_1 J_lam = sum_{mu = lam - box} kappa(lam, mu) J_mu,
    kappa(lam, mu) = psi'_{lam/mu} c'_lam / (alpha c'_mu),

which follows from the Pieri rule for p_1 and from alpha d/dp_1 being adjoint
to multiplication by p_1.  It is checked against the direct route in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import GammaPoly, MultivarPoly, QuadExt
from .embeddings import multirect_variables
from .identities import parts1_sides, rect_recurrence_sides
from .partition import Partition, falling_factorial, partitions_of

DEFAULT_DIRECT_BOUND = 9


class JackBoundError(ValueError):
    pass


class InterpolationError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# Power sums versus monomials
# ---------------------------------------------------------------------------


def _count_fillings(parts, target):
    """Ways to distribute the (distinguishable) ``parts`` into bins of sizes ``target``."""

    @lru_cache(maxsize=None)
    def rec(i, caps):
        if i == len(parts):
            return 1 if not any(caps) else 0
        r = parts[i]
        total = 0
        for j, c in enumerate(caps):
            if c >= r:
                total += rec(i + 1, caps[:j] + (c - r,) + caps[j + 1:])
        return total

    return rec(0, tuple(target))


@lru_cache(maxsize=None)
def p_to_m(n: int):
    """R with p_rho = sum_mu R[rho][mu] m_mu, as a dict of dicts."""
    parts = partitions_of(n)
    return {rho: {mu: c for mu in parts if (c := _count_fillings(tuple(rho), tuple(mu)))} for rho in parts}


def _solve_lower(rows, order):
    """Invert a unitriangular-like integer matrix given as dict of dicts (exact)."""
    idx = {x: i for i, x in enumerate(order)}
    n = len(order)
    A = [[Fraction(0)] * n for _ in range(n)]
    for r, row in rows.items():
        for c, v in row.items():
            A[idx[r]][idx[c]] = Fraction(v)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = A[col][col]
        A[col] = [x / f for x in A[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and A[r][col]:
                g = A[r][col]
                A[r] = [x - g * y for x, y in zip(A[r], A[col])]
                inv[r] = [x - g * y for x, y in zip(inv[r], inv[col])]
    return inv


@lru_cache(maxsize=None)
def m_to_p(n: int):
    """m_mu = sum_rho M[mu][rho] p_rho."""
    order = partitions_of(n)
    R = p_to_m(n)
    Rinv = _solve_lower(R, order)  # m = R^{-1} p
    out = {}
    for i, mu in enumerate(order):
        out[mu] = {rho: Rinv[i][j] for j, rho in enumerate(order) if Rinv[i][j]}
    return out


def power_sum_norm(rho, alpha):
    rho = Partition(rho)
    return rho.z() * Fraction(alpha) ** rho.length


# ---------------------------------------------------------------------------
# Fixed-alpha construction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def jack_table(n: int, alpha) -> dict:
    """lam -> {rho: theta_rho(lam)} at a fixed rational alpha, for all lam of size n."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n == 0:
        return {Partition(): {Partition(): Fraction(1)}}
    M = m_to_p(n)
    norms = {rho: power_sum_norm(rho, alpha) for rho in partitions_of(n)}

    def dot(x, y):
        if len(x) > len(y):
            x, y = y, x
        return sum((c * y[r] * norms[r] for r, c in x.items() if r in y), Fraction(0))

    done = []
    out = {}
    for lam in reversed(partitions_of(n)):
        v = dict(M[lam])
        for P, PP in done:
            c = dot(M[lam], P) / PP
            if c:
                for r, x in P.items():
                    v[r] = v.get(r, 0) - c * x
        v = {r: x for r, x in v.items() if x}
        done.append((v, dot(v, v)))
        lead = v.get(Partition([1] * n), Fraction(0))
        if not lead:
            raise ArithmeticError(f"degenerate Gram-Schmidt at {lam}")
        out[lam] = {r: x / lead for r, x in v.items()}
    return out


def theta_at(rho, lam, alpha) -> Fraction:
    rho, lam = Partition(rho), Partition(lam)
    if rho.size != lam.size:
        raise ValueError("theta needs |rho| = |lam|")
    return jack_table(lam.size, Fraction(alpha))[lam].get(rho, Fraction(0))


# ---------------------------------------------------------------------------
# Polynomial dependence on alpha
# ---------------------------------------------------------------------------


def interpolate(xs, ys) -> GammaPoly:
    """Newton interpolation, returned in the monomial basis."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = GammaPoly.constant(coef[-1])
    for i in range(n - 2, -1, -1):
        poly = poly * GammaPoly((-xs[i], 1)) + coef[i]
    return poly


@dataclass(frozen=True)
class PowerSumPoly:
    """sum_rho coeffs[rho](alpha) p_rho, all rho of one size."""

    n: int
    coeffs: dict

    def __getitem__(self, rho):
        return self.coeffs.get(Partition(rho), GammaPoly())

    def at(self, alpha) -> dict:
        return {r: c(Fraction(alpha)) for r, c in self.coeffs.items()}

    def __str__(self):
        terms = []
        for rho in partitions_of(self.n):
            c = self.coeffs.get(rho)
            if c:
                p = "*".join(f"p_{x}" for x in rho)
                terms.append(f"({format_alpha_poly(c)})*{p}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {",".join(map(str, rho)): c.to_json() for rho, c in self.coeffs.items()}


def format_alpha_poly(c: GammaPoly) -> str:
    return c.format("alpha")


_ALPHA_NODES_START = 1


@lru_cache(maxsize=None)
def jack_powersum(lam, bound=DEFAULT_DIRECT_BOUND) -> PowerSumPoly:
    """J_lam in power sums with coefficients in Q[alpha].

    Interpolates at n+1 nodes and requires agreement at two further nodes; a
    mismatch means the coefficients are not polynomials of degree <= n.
    """
    lam = Partition(lam)
    n = lam.size
    if n > bound:
        raise JackBoundError(f"|lam| = {n} exceeds the bound {bound}")
    nodes = [Fraction(_ALPHA_NODES_START + i) for i in range(n + 1)]
    checks = [Fraction(1, 2), Fraction(n + 7, 3)]
    tables = [jack_table(n, a)[lam] for a in nodes]
    ctables = [jack_table(n, a)[lam] for a in checks]
    coeffs = {}
    for rho in partitions_of(n):
        poly = interpolate(nodes, [t.get(rho, 0) for t in tables])
        for a, t in zip(checks, ctables):
            if poly(a) != t.get(rho, 0):
                raise InterpolationError(f"theta_{rho}({lam}) is not a polynomial of degree <= {n} in alpha")
        if poly:
            coeffs[rho] = poly
    return PowerSumPoly(n, coeffs)


def theta(rho, lam) -> GammaPoly:
    rho, lam = Partition(rho), Partition(lam)
    if rho.size != lam.size:
        raise ValueError("theta needs |rho| = |lam|")
    return jack_powersum(lam)[rho]


def jack_scalar_product(lam, mu) -> GammaPoly:
    """<J_lam, J_mu>_alpha as a polynomial in alpha."""
    A, B = jack_powersum(lam), jack_powersum(mu)
    if A.n != B.n:
        return GammaPoly()
    total = GammaPoly()
    for rho, c in A.coeffs.items():
        d = B.coeffs.get(rho)
        if d:
            total = total + c * d * GammaPoly.monomial(rho.z(), rho.length)
    return total


def m1n_coefficient(lam) -> GammaPoly:
    """[m_{1^n}] J_lam; only p_{1^n} contributes, with n!."""
    lam = Partition(lam)
    return jack_powersum(lam)[Partition([1] * lam.size)] * factorial(lam.size)


# ---------------------------------------------------------------------------
# Branching in p_1
# ---------------------------------------------------------------------------


def _arm_leg(lam, i, j):
    conj = lam.conjugate()
    return lam[i] - j - 1, conj[j] - i - 1


def _b(lam, i, j, alpha):
    a, l = _arm_leg(lam, i, j)
    return (alpha * a + l + 1) / (alpha * a + l + alpha)


def _cprime_ratio(lam, mu, alpha):
    """c'_lam / c'_mu with c'_x = prod_s (alpha a(s) + l(s) + alpha)."""
    i = next(k for k in range(len(lam)) if k >= len(mu) or lam[k] != mu[k])
    j = lam[i] - 1
    out = alpha  # the removed box itself has a = l = 0
    for k in range(j):
        a, l = _arm_leg(lam, i, k)
        a2, l2 = _arm_leg(mu, i, k)
        out *= (alpha * a + l + alpha) / (alpha * a2 + l2 + alpha)
    for k in range(i):
        a, l = _arm_leg(lam, k, j)
        a2, l2 = _arm_leg(mu, k, j)
        out *= (alpha * a + l + alpha) / (alpha * a2 + l2 + alpha)
    return out


def _psi_prime(lam, mu, alpha):
    """psi'_{lam/mu} for one box at (i, j): product over the boxes above it in column j of b_lam / b_mu."""
    i = next(k for k in range(len(lam)) if k >= len(mu) or lam[k] != mu[k])
    j = lam[i] - 1
    out = Fraction(1)
    for k in range(i):
        out *= _b(lam, k, j, alpha) / _b(mu, k, j, alpha)
    return out


@lru_cache(maxsize=None)
def branching_coefficient(lam, mu, alpha) -> Fraction:
    """kappa(lam, mu): coefficient of J_mu in d/dp_1 J_lam (mu = lam minus one box)."""
    alpha = Fraction(alpha)
    return _psi_prime(lam, mu, alpha) * _cprime_ratio(lam, mu, alpha) / alpha


def remove_corner_boxes(lam):
    lam = Partition(lam)
    for i in range(len(lam)):
        if i + 1 == len(lam) or lam[i + 1] < lam[i]:
            rows = list(lam)
            rows[i] -= 1
            yield Partition(r for r in rows if r)


@lru_cache(maxsize=None)
def descent_weights(lam, k: int, alpha) -> tuple:
    """Sum over chains lam -> ... -> mu (|mu| = k) of the product of branching coefficients."""
    lam = Partition(lam)
    if lam.size == k:
        return ((lam, Fraction(1)),)
    acc = {}
    for nu in remove_corner_boxes(lam):
        c = branching_coefficient(lam, nu, alpha)
        for mu, w in descent_weights(nu, k, alpha):
            acc[mu] = acc.get(mu, 0) + c * w
    return tuple(sorted(acc.items()))


def theta_branching(pi0, lam, alpha) -> Fraction:
    """theta_{pi0 + 1^m}(lam) with m = |lam| - |pi0|, through descent to size |pi0|."""
    pi0, lam = Partition(pi0), Partition(lam)
    alpha = Fraction(alpha)
    m = lam.size - pi0.size
    if m < 0:
        raise ValueError("|lam| < |pi0|")
    base = jack_table(pi0.size, alpha)
    m1 = pi0.m(1)
    total = sum((w * base[mu].get(pi0, 0) for mu, w in descent_weights(lam, pi0.size, alpha)), Fraction(0))
    for j in range(1, m + 1):
        total /= m1 + j
    return total


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterValue:
    value: QuadExt
    pi: Partition
    lam: Partition
    alpha: Fraction


def character(pi, lam, alpha, method="auto", bound=DEFAULT_DIRECT_BOUND) -> QuadExt:
    """Ch_pi(lam) at a rational alpha, exactly; zero when |lam| < |pi|."""
    pi, lam = Partition(pi), Partition(lam)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n, k = lam.size, pi.size
    if n < k:
        return QuadExt(alpha, 0)
    rho = pi.with_ones(n - k)
    if method == "auto":
        method = "direct" if n <= bound else "branching"
    if method == "direct":
        th = theta_at(rho, lam, alpha)
    elif method == "branching":
        th = theta_branching(pi.without_ones(), lam, alpha)
    else:
        raise ValueError(f"unknown method {method!r}")
    m1 = pi.m(1)
    e = pi.size - pi.length
    pref = (QuadExt.s(alpha) / alpha) ** e  # alpha^{-e/2}
    return pref * (comb(n - k + m1, m1) * pi.z() * th)


def jack_character(pi, lam, alpha, method="auto") -> CharacterValue:
    pi, lam = Partition(pi), Partition(lam)
    return CharacterValue(character(pi, lam, alpha, method), pi, lam, Fraction(alpha))


def lassalle_normalization(ch: CharacterValue) -> QuadExt:
    """vartheta = alpha^{(|pi| - l(pi))/2} Ch; always rational."""
    e = ch.pi.size - ch.pi.length
    v = ch.value * QuadExt.s(ch.alpha) ** e
    if not v.is_rational():
        raise ArithmeticError(f"normalised character is not rational: {v}")
    return v


def duality_sides(pi, lam, alpha):
    pi, lam = Partition(pi), Partition(lam)
    alpha = Fraction(alpha)
    lhs = character(pi, lam, alpha)
    rhs = character(pi, lam.conjugate(), 1 / alpha)
    if (pi.size - pi.length) % 2:
        rhs = -rhs
    return lhs, rhs.rebase(alpha)


def duality_check(pi, lam, alpha) -> bool:
    lhs, rhs = duality_sides(pi, lam, alpha)
    return lhs == rhs


def verify_lassalle_recurrence(pi, p, q, alpha) -> bool:
    lhs, rhs = rect_recurrence_sides(pi, p, q, alpha, character)
    return lhs == rhs


def verify_character_parts1(pi, l, lam, alpha) -> bool:
    lhs, rhs = parts1_sides(pi, l, lam, alpha, character)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Symbolic multirectangular characters
# ---------------------------------------------------------------------------


def _simplex(dim, D):
    if dim == 0:
        yield ()
        return
    for a in range(D + 1):
        for rest in _simplex(dim - 1, D - a):
            yield (a,) + rest


def _binom_poly(lin: MultivarPoly, k: int) -> MultivarPoly:
    out = MultivarPoly.constant(lin.variables, Fraction(1))
    for t in range(k):
        out = out * (lin - t)
    return out.scale(Fraction(1, factorial(k)))


def _point_diagram(P, Q):
    return Partition.from_multirect(P, Q)


def character_multirect(pi, ell: int, alpha, degree=None) -> MultivarPoly:
    """Ch_pi(P x Q) as a polynomial in p_1..p_l, q_1..q_l over Q(sqrt(alpha)).

    Values are taken on diagrams with q_1 > ... > q_l >= 1 written as
    q_i = q_{i+1} + 1 + t_i (t_l = q_l - 1), on the simplex of total degree
    ``degree`` in (p, t); the Newton form on that simplex is unique.  The
    default degree is |pi| + l(pi).  The result must also reproduce every
    point of the next layer, otherwise InterpolationError is raised.
    """
    pi = Partition(pi)
    alpha = Fraction(alpha)
    if ell < 1:
        raise ValueError("ell must be at least 1")
    D = pi.size + pi.length if degree is None else degree
    dim = 2 * ell

    def q_of(t):
        q = [0] * ell
        acc = 0
        for i in range(ell - 1, -1, -1):
            acc += 1 + t[i]
            q[i] = acc
        return q

    def value(x):
        P, t = x[:ell], x[ell:]
        return character(pi, _point_diagram(P, q_of(t)), alpha)

    # forward differences on the simplex, one axis at a time
    vals = {x: value(x) for x in _simplex(dim, D)}
    for axis in range(dim):
        new = {}
        for x in vals:
            k = x[axis]
            acc = QuadExt(alpha, 0)
            for j in range(k + 1):
                y = x[:axis] + (j,) + x[axis + 1:]
                c = comb(k, j)
                acc = acc + (vals[y] * c if (k - j) % 2 == 0 else -(vals[y] * c))
            new[x] = acc
        vals = new

    variables = multirect_variables(ell)
    lin = []
    for i in range(ell):
        lin.append(MultivarPoly.var(variables, f"p_{i + 1}"))
    for i in range(ell):
        t = MultivarPoly.var(variables, f"q_{i + 1}") - 1
        if i + 1 < ell:
            t = t - MultivarPoly.var(variables, f"q_{i + 2}")
        lin.append(t)
    binoms = [{} for _ in range(dim)]

    def binom(axis, k):
        if k not in binoms[axis]:
            binoms[axis][k] = _binom_poly(lin[axis], k)
        return binoms[axis][k]

    result = MultivarPoly(variables)
    for x, d in vals.items():
        if not d:
            continue
        term = MultivarPoly.constant(variables, Fraction(1))
        for axis, k in enumerate(x):
            if k:
                term = term * binom(axis, k)
        result = result + term.scale(d)

    for x in _simplex(dim, D + 1):
        if sum(x) != D + 1:
            continue
        P, t = x[:ell], x[ell:]
        q = q_of(t)
        b = {f"p_{i + 1}": QuadExt(alpha, P[i]) for i in range(ell)}
        b.update({f"q_{i + 1}": QuadExt(alpha, q[i]) for i in range(ell)})
        got = result.substitute(b)
        want = value(x)
        if got != want:
            raise InterpolationError(
                f"Ch_{tuple(pi)} on {ell} rectangles: degree {D} interpolation fails at P={P}, Q={q}"
            )
    return result


# ---------------------------------------------------------------------------
# Symmetric group characters (alpha = 1 reference)
# ---------------------------------------------------------------------------


def _beta_set(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return tuple(lam[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta, rho):
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    bset = set(beta)
    for b in beta:
        if b - r >= 0 and (b - r) not in bset:
            sign = sum(1 for c in beta if b - r < c < b)
            nb = tuple(sorted((c if c != b else b - r for c in beta), reverse=True))
            total += (-1) ** sign * _mn(nb, rest)
    return total


def sn_character(lam, rho) -> int:
    """chi^lam(rho) by removing rim hooks (on beta-sets), largest parts first."""
    lam, rho = Partition(lam), Partition(rho)
    if lam.size != rho.size:
        raise ValueError("sizes differ")
    return _mn(_beta_set(lam, max(len(lam), 1)), tuple(rho))


def sn_normalized_character(pi, lam) -> Fraction:
    """(n)_k chi^lam(pi + 1^{n-k}) / chi^lam(1^n); zero if n < k."""
    pi, lam = Partition(pi), Partition(lam)
    n, k = lam.size, pi.size
    if n < k:
        return Fraction(0)
    dim = sn_character(lam, [1] * n)
    return Fraction(falling_factorial(n, k) * sn_character(lam, pi.with_ones(n - k)), dim)
