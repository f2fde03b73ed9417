from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jackmaps.algebra import (
    GammaPoly,
    MultivarPoly,
    QuadExt,
    gamma_poly_eval,
    gamma_value,
    multivar_substitute,
    parse_rational,
    rational_to_json,
)

from conftest import positive_rationals, rationals

gamma_polys = st.lists(rationals, max_size=5).map(lambda c: GammaPoly(tuple(c)))
VARS = ("x", "y", "z")
multivar = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), rationals, max_size=5).map(
    lambda t: MultivarPoly(VARS, t)
)


def quads(alpha):
    return st.tuples(rationals, rationals).map(lambda t: QuadExt(alpha, *t))


# -- examples ---------------------------------------------------------------


def test_eval_constant():
    v = gamma_poly_eval(GammaPoly.constant(1), Fraction(7, 3))
    assert (v.rat, v.sqrt) == (1, 0)


def test_eval_gamma_at_one():
    v = gamma_poly_eval(GammaPoly.gamma(), 1)
    assert (v.rat, v.sqrt) == (0, 0)


def test_eval_gamma_squared_at_two():
    v = gamma_poly_eval(GammaPoly((0, 0, 1)), 2)
    assert (v.rat, v.sqrt) == (Fraction(1, 2), 0)


def test_gamma_value_form():
    g = gamma_value(Fraction(1, 3))
    assert g * g == QuadExt(Fraction(1, 3), Fraction(4, 3))
    assert g.to_float() > 0


def test_substitute_products():
    P = MultivarPoly(("p_1", "q_1"), {(1, 1): 1})
    assert multivar_substitute(P, {"p_1": 2, "q_1": 3}) == 6
    U = MultivarPoly(("u_1",), {(1,): 1})
    s = QuadExt.s(3)
    assert multivar_substitute(U, {"u_1": s}) == s
    G = MultivarPoly(("g", "p_1"), {(2, 1): 1})
    assert multivar_substitute(G, {"g": gamma_value(2), "p_1": QuadExt(2, 2)}) == QuadExt(2, 1)


def test_substitute_errors():
    P = MultivarPoly(("a", "b"), {(1, 1): 1})
    with pytest.raises(KeyError):
        multivar_substitute(P, {"a": 1})
    with pytest.raises(ValueError):
        multivar_substitute(P, {"a": QuadExt(2, 1), "b": QuadExt(3, 1)})


def test_nonpositive_alpha_rejected():
    with pytest.raises(ValueError):
        gamma_poly_eval(GammaPoly.gamma(), 0)
    with pytest.raises(ValueError):
        QuadExt(-1, 1)


def test_mixed_alpha_refused():
    with pytest.raises(ValueError):
        QuadExt(2, 1) + QuadExt(3, 1)


def test_zero_polynomial_degree_sentinel():
    assert GammaPoly().degree is None
    assert GammaPoly((1, 2, 0, 0)).coeffs == (1, 2)


def test_square_alpha_collapses():
    v = QuadExt(4, 3, 5)
    assert v.is_rational() and v.rat == 13
    assert v.to_float() == 13.0


def test_json_formats():
    assert rational_to_json(Fraction(-3, 6)) == "-1/2"
    assert GammaPoly((Fraction(1, 6), 0, Fraction(2, 3))).to_json() == ["1/6", "0/1", "2/3"]
    assert GammaPoly.from_json(["1/2", "0/1", "1/1"]) == GammaPoly((Fraction(1, 2), 0, 1))
    q = QuadExt(Fraction(7, 3), Fraction(1, 2), -2)
    assert QuadExt.from_json(q.to_json()) == q
    m = MultivarPoly(VARS, {(1, 0, 2): Fraction(3, 4), (0, 1, 0): -1})
    assert MultivarPoly.from_json(VARS, m.to_json()) == m


def test_parse_rational_refuses_decimals():
    assert parse_rational("7/3") == Fraction(7, 3)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_divmod_by_special_modulus():
    f = GammaPoly((1, 2, 3, 4))
    m = GammaPoly((-1, 0, 2))
    q, r = f.divmod(m)
    assert q * m + r == f
    assert r.degree is None or r.degree < 2


def test_rebase_reciprocal():
    v = QuadExt(2, 1, 3)  # 1 + 3 sqrt 2 = 1 + 6 sqrt(1/2)
    w = v.rebase(Fraction(1, 2))
    assert (w.rat, w.sqrt) == (1, 6)


# -- properties -------------------------------------------------------------


@given(gamma_polys, gamma_polys, gamma_polys)
def test_gamma_poly_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert f - f == GammaPoly()


@given(positive_rationals, st.data())
def test_quad_ext_ring_axioms(alpha, data):
    a, b, c = (data.draw(quads(alpha)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == 1


@given(multivar, multivar, multivar)
def test_multivar_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert all(c != 0 for c in (f * g).terms.values())


@given(gamma_polys, gamma_polys, positive_rationals)
def test_eval_is_homomorphism(f, g, alpha):
    assert gamma_poly_eval(f * g, alpha) == gamma_poly_eval(f, alpha) * gamma_poly_eval(g, alpha)
    assert gamma_poly_eval(f + g, alpha) == gamma_poly_eval(f, alpha) + gamma_poly_eval(g, alpha)


@given(multivar, st.tuples(rationals, rationals, rationals))
def test_substitution_is_homomorphism(f, xs):
    b = dict(zip(VARS, xs))
    assert multivar_substitute(f * f, b) == multivar_substitute(f, b) ** 2


@given(st.integers(1, 30), rationals, rationals)
def test_square_alpha_real_embedding(r, a, b):
    alpha = Fraction(r * r, 4)
    v = QuadExt(alpha, a, b)
    assert v.rat == a + b * Fraction(r, 2)
    assert abs(v.to_float() - (float(a) + float(b) * r / 2)) < 1e-9
