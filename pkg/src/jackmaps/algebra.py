"""Exact arithmetic: rationals, polynomials in gamma, the extension Q(sqrt(alpha))
and sparse multivariate polynomials.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  Nothing in this module touches floating point except the
explicit display helpers ``to_float``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

__all__ = [
    "Fraction",
    "as_fraction",
    "parse_rational",
    "rational_to_json",
    "rational_sqrt",
    "GammaPoly",
    "QuadExt",
    "MultivarPoly",
    "gamma_poly_eval",
    "gamma_value",
    "multivar_substitute",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"7/3"``, ``"-2"`` or ``"1/2"``.  Decimal strings are refused."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def rational_to_json(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction):
    """Return the rational square root of ``x`` or ``None`` if it is irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# Univariate polynomials in gamma
# ---------------------------------------------------------------------------


class GammaPoly:
    """Polynomial in one variable (gamma) with rational coefficients.

    Coefficients are stored densely, lowest degree first, without trailing
    zeros.  The zero polynomial has ``degree`` ``None``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "GammaPoly":
        # coeffs already Fractions and trimmed
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "GammaPoly":
        return cls((c,))

    @classmethod
    def gamma(cls) -> "GammaPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff, degree: int) -> "GammaPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, GammaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == GammaPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("GammaPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"GammaPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format("gamma")

    def format(self, var: str) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}")
        return " + ".join(parts)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GammaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return GammaPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return GammaPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return GammaPoly._raw(())
            return GammaPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, GammaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return GammaPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return GammaPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / other
            return GammaPoly._raw(tuple(c * inv for c in self.coeffs))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = GammaPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, divisor: "GammaPoly"):
        """Euclidean division over the rationals."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            c = rem[-1] / lead
            quot[k] = c
            for i, d in enumerate(divisor.coeffs):
                rem[i + k] -= c * d
            while rem and rem[-1] == 0:
                rem.pop()
        return GammaPoly(quot), GammaPoly(rem)

    def __mod__(self, divisor: "GammaPoly"):
        return self.divmod(divisor)[1]

    def reflect(self) -> "GammaPoly":
        """The polynomial ``p(-gamma)``."""
        return GammaPoly._raw(tuple(-c if k % 2 else c for k, c in enumerate(self.coeffs)))

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def to_json(self) -> list:
        return [rational_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "GammaPoly":
        return cls(parse_rational(c) if isinstance(c, str) else c for c in data)


# ---------------------------------------------------------------------------
# The quadratic extension Q(s), s^2 = alpha
# ---------------------------------------------------------------------------


class QuadExt:
    """Element ``rat + sqrt * s`` of Q(s) with ``s**2 == alpha``.

    When ``alpha`` is the square of a rational the extension collapses onto
    Q; elements are then normalized to ``sqrt == 0`` so that equality stays
    meaningful (e.g. at alpha = 1 the element ``s`` *is* 1).  Arithmetic
    between elements over different alphas raises ``ValueError``.
    """

    __slots__ = ("alpha", "rat", "sqrt", "_root")

    def __init__(self, alpha, rat=0, sqrt=0):
        alpha = as_fraction(alpha)
        if alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        rat = as_fraction(rat)
        sqrt = as_fraction(sqrt)
        root = rational_sqrt(alpha)
        if root is not None and sqrt:
            rat += sqrt * root
            sqrt = Fraction(0)
        self.alpha = alpha
        self.rat = rat
        self.sqrt = sqrt
        self._root = root

    @classmethod
    def _make(cls, alpha, rat, sqrt, root):
        q = object.__new__(cls)
        if root is not None and sqrt:
            rat += sqrt * root
            sqrt = Fraction(0)
        q.alpha = alpha
        q.rat = rat
        q.sqrt = sqrt
        q._root = root
        return q

    @classmethod
    def s(cls, alpha) -> "QuadExt":
        """The generator sqrt(alpha)."""
        return cls(alpha, 0, 1)

    def _like(self, rat, sqrt):
        return QuadExt._make(self.alpha, rat, sqrt, self._root)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.alpha != self.alpha:
                raise ValueError(f"mixed-alpha arithmetic: {self.alpha} vs {other.alpha}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._like(Fraction(other), Fraction(0))
        return None

    def is_rational(self) -> bool:
        return self.sqrt == 0

    def rational(self) -> Fraction:
        if self.sqrt:
            raise ValueError(f"{self} is not rational")
        return self.rat

    def __bool__(self):
        return bool(self.rat) or bool(self.sqrt)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.alpha == other.alpha and self.rat == other.rat and self.sqrt == other.sqrt
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.sqrt == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.sqrt == 0:
            return hash(self.rat)
        return hash(("QuadExt", self.alpha, self.rat, self.sqrt))

    def __repr__(self):
        return f"QuadExt(alpha={self.alpha}, {self.rat}, {self.sqrt})"

    def __str__(self):
        if self.sqrt == 0:
            return str(self.rat)
        root = f"({self.sqrt})*sqrt({self.alpha})"
        return root if self.rat == 0 else f"{self.rat} + {root}"

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._like(self.rat + o.rat, self.sqrt + o.sqrt)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.rat, -self.sqrt)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._like(self.rat - o.rat, self.sqrt - o.sqrt)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._like(self.rat * other, self.sqrt * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.rat, self.sqrt, o.rat, o.sqrt
        return self._like(a * c + b * d * self.alpha, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return self._like(self.rat, -self.sqrt)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.sqrt * self.sqrt * self.alpha

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(alpha))")
        return self._like(self.rat / n, -self.sqrt / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._like(self.rat / other, self.sqrt / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._like(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def rebase(self, new_alpha) -> "QuadExt":
        """Re-express the element over ``new_alpha`` when Q(sqrt(new_alpha)) = Q(s)
        with ``sqrt(new_alpha) = c * s`` for rational ``c``.

        Supports ``new_alpha = alpha * r**2``; in particular ``1/alpha``.
        """
        new_alpha = as_fraction(new_alpha)
        ratio = rational_sqrt(new_alpha / self.alpha)
        if ratio is None:
            root_old, root_new = self._root, rational_sqrt(new_alpha)
            if root_old is not None and root_new is not None:
                return QuadExt(new_alpha, self.rat + self.sqrt * root_old, 0)
            raise ValueError(f"Q(sqrt({self.alpha})) and Q(sqrt({new_alpha})) differ")
        # s = sqrt(new)/ratio
        return QuadExt(new_alpha, self.rat, self.sqrt / ratio)

    def to_float(self) -> float:
        """Real embedding with s > 0.  Display only."""
        return float(self.rat) + float(self.sqrt) * float(self.alpha) ** 0.5

    def to_json(self) -> dict:
        return {
            "alpha": rational_to_json(self.alpha),
            "rat": rational_to_json(self.rat),
            "sqrt": rational_to_json(self.sqrt),
        }

    @classmethod
    def from_json(cls, data) -> "QuadExt":
        return cls(parse_rational(data["alpha"]), parse_rational(data["rat"]), parse_rational(data["sqrt"]))


def gamma_value(alpha) -> QuadExt:
    """gamma(alpha) = (1 - alpha)/sqrt(alpha) = (1 - alpha) * s / alpha."""
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return QuadExt(alpha, 0, (1 - alpha) / alpha)


def gamma_poly_eval(poly: GammaPoly, alpha) -> QuadExt:
    alpha = as_fraction(alpha)
    g = gamma_value(alpha)
    out = QuadExt(alpha)
    for c in reversed(poly.coeffs):
        out = out * g + c
    return out


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _is_zero(c) -> bool:
    return not c


class MultivarPoly:
    """Sparse polynomial over a fixed, ordered list of variable names.

    ``terms`` maps exponent tuples (aligned with ``variables``) to non-zero
    coefficients.  Coefficients are normally :class:`Fraction`; any exact
    ring element supporting ``+``, ``*`` and truthiness (e.g.
    :class:`QuadExt`) is accepted.
    """

    __slots__ = ("variables", "terms", "_index")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self._index = {v: i for i, v in enumerate(self.variables)}
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent vector does not match the variable list")
            if isinstance(c, int):
                c = Fraction(c)
            if not _is_zero(c):
                clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name, coeff=1):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): coeff})

    def _check(self, other):
        if not isinstance(other, MultivarPoly):
            return False
        if other.variables != self.variables:
            raise ValueError(f"variable lists differ: {self.variables} vs {other.variables}")
        return True

    def __eq__(self, other):
        if isinstance(other, MultivarPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.variables): other}
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultivarPoly.constant(self.variables, other)
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if _is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        p = MultivarPoly(self.variables)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MultivarPoly(self.variables)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultivarPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        p = MultivarPoly(self.variables)
        if _is_zero(c):
            return p
        out = {}
        for e, x in self.terms.items():
            v = x * c
            if not _is_zero(v):
                out[e] = v
        p.terms = out
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(other)
        if not self._check(other):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                out[e] = v
        p = MultivarPoly(self.variables)
        p.terms = {e: c for e, c in out.items() if not _is_zero(c)}
        return p

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = MultivarPoly.constant(self.variables, Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def add_term(self, exps, c):
        """In-place accumulation (used while building a polynomial)."""
        exps = tuple(exps)
        v = self.terms.get(exps)
        v = c if v is None else v + c
        if _is_zero(v):
            self.terms.pop(exps, None)
        else:
            self.terms[exps] = v

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=None)

    def degree_in(self, name):
        i = self._index[name]
        return max((e[i] for e in self.terms), default=None)

    def coefficient(self, exps) -> object:
        if isinstance(exps, dict):
            vec = [0] * len(self.variables)
            for k, v in exps.items():
                vec[self._index[k]] = v
            exps = tuple(vec)
        return self.terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self):
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def substitute(self, bindings):
        """Evaluate at ``bindings`` (variable name -> value) exactly."""
        missing = [v for v in self.variables if v not in bindings]
        if missing:
            raise KeyError(f"unbound variables: {missing}")
        vals = [bindings[v] for v in self.variables]
        alphas = {b.alpha for b in vals if isinstance(b, QuadExt)}
        alphas |= {c.alpha for c in self.terms.values() if isinstance(c, QuadExt)}
        if len(alphas) > 1:
            raise ValueError(f"bindings live over different alphas: {sorted(alphas)}")
        powers = [{} for _ in vals]
        total = QuadExt(alphas.pop()) if alphas else Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for i, k in enumerate(exps):
                if k:
                    cache = powers[i]
                    pk = cache.get(k)
                    if pk is None:
                        pk = vals[i] ** k
                        cache[k] = pk
                    term = term * pk
            total = total + term
        return total

    def partial_substitute(self, bindings) -> "MultivarPoly":
        """Substitute some variables, keeping the others (variable list unchanged)."""
        idx = [(self._index[k], v) for k, v in bindings.items()]
        out = MultivarPoly(self.variables)
        for exps, c in self.terms.items():
            e = list(exps)
            term = c
            for i, v in idx:
                if e[i]:
                    term = term * (v ** e[i])
                    e[i] = 0
            out.add_term(e, term)
        return out

    def rename(self, variables) -> "MultivarPoly":
        """Re-embed into a superset variable list (by name)."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.variables]
        out = MultivarPoly(variables)
        for exps, c in self.terms.items():
            e = [0] * len(variables)
            for i, k in zip(pos, exps):
                e[i] = k
            out.add_term(e, c)
        return out

    def __repr__(self):
        return f"MultivarPoly({self.variables}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exps) if k
            )
            out.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(out)

    def to_json(self) -> list:
        rows = []
        for exps, c in self.sorted_terms():
            coeff = c.to_json() if isinstance(c, QuadExt) else rational_to_json(c)
            rows.append({"exps": {v: k for v, k in zip(self.variables, exps) if k}, "coeff": coeff})
        return rows

    @classmethod
    def from_json(cls, variables, rows) -> "MultivarPoly":
        out = cls(variables)
        index = {v: i for i, v in enumerate(out.variables)}
        for row in rows:
            e = [0] * len(out.variables)
            for k, v in row["exps"].items():
                e[index[k]] = v
            c = row["coeff"]
            c = QuadExt.from_json(c) if isinstance(c, dict) else parse_rational(c)
            out.add_term(e, c)
        return out


def multivar_substitute(poly: MultivarPoly, bindings):
    return poly.substitute(bindings)
