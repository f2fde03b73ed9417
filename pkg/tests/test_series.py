from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jackmaps.algebra import QuadExt
from jackmaps.jack import character, character_multirect
from jackmaps.partition import Partition, partitions_of
from jackmaps.series import (
    ResourceLimitError,
    clear_caches,
    genseries_multirect,
    genseries_numeric,
    genseries_symbolic,
    special_alpha_closed_form,
    verify_parts1_identity,
    verify_rect_recurrence,
)

alphas = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(5, 3)])
lams = st.integers(1, 6).flatmap(lambda n: st.sampled_from(partitions_of(n)))
small_pi = st.integers(1, 4).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def test_single_part_is_size():
    for lam in [(1,), (3, 1), (2, 2, 1)]:
        for a in (Fraction(1, 3), 1, 4):
            assert genseries_numeric((1,), lam, a) == Partition(lam).size


def test_size_two_examples():
    assert genseries_numeric((2,), (2,), 1) == 2
    v = genseries_numeric((2,), (2,), Fraction(5, 2))
    assert (v.rat, v.sqrt) == (0, 2)


def test_empty_face_type():
    assert genseries_numeric((), (3,), 2) == 1


def test_symbolic_single_part():
    F = genseries_symbolic((1,), 1)
    assert F.poly.terms == {(1, 1, 0): 1}
    assert F.evaluate((3,), (4,), Fraction(2, 7)) == 12


def test_symbolic_two_parts():
    F = genseries_symbolic((2,), 1)
    assert F.coefficients_nonnegative()
    assert F.evaluate((1,), (1,), 1) == 0


def test_numeric_methods_agree():
    for pi in [(2,), (3,), (2, 1)]:
        for lam in [(2, 1), (3, 1, 1)]:
            for a in (Fraction(1, 2), 3):
                assert genseries_numeric(pi, lam, a) == genseries_numeric(pi, lam, a, method="direct")


def test_specialize_matches_evaluate():
    F = genseries_symbolic((3,), 2)
    a = Fraction(3)
    spec = F.specialize(a)
    b = {"p_1": 2, "p_2": 1, "q_1": 3, "q_2": 1}
    assert spec.substitute(b) == F.evaluate((2, 1), (3, 1), a)


def test_parts1_examples():
    assert genseries_numeric((1, 1), (2,), 1) == 2
    assert verify_parts1_identity((1,), 1, (2,), 1)
    assert verify_parts1_identity((), 1, (3, 1), 2)
    assert verify_parts1_identity((2,), 1, (2, 1), 2)


def test_recurrence_examples():
    assert verify_rect_recurrence((2,), 1, 1, 1)
    assert verify_rect_recurrence((3,), 2, 1, 2)
    assert verify_rect_recurrence((2, 2), 1, 3, Fraction(1, 2))
    with pytest.raises(ValueError):
        verify_rect_recurrence((2, 1), 1, 1, 1)


def test_special_alpha_examples():
    assert special_alpha_closed_form((1,), (3, 2), 2) == 5
    assert special_alpha_closed_form((1,), (3, 2), Fraction(1, 2)) == 5
    assert special_alpha_closed_form((2,), (2, 1), 2) == genseries_numeric((2,), (2, 1), 2)
    h = Fraction(1, 2)
    assert special_alpha_closed_form((3,), (1, 1, 1), h) == genseries_numeric((3,), (1, 1, 1), h)


def test_resource_guard():
    with pytest.raises(ResourceLimitError) as err:
        genseries_numeric((8,), (2,), 1)
    assert err.value.maps == 2027025


def test_jobs_do_not_change_result():
    a = genseries_symbolic((2, 2), 2).poly
    clear_caches()
    b = genseries_symbolic((2, 2), 2, jobs=2).poly
    assert a == b


def test_rectangular_symbolic_small():
    from jackmaps.verify import rectangular_alpha_span
    for pi in [(1,), (2,), (3,), (2, 1)]:
        F = genseries_symbolic(pi, 1)
        lo, hi = rectangular_alpha_span(pi, F)
        for a in range(1, hi - lo + 2):
            assert F.specialize(a) == character_multirect(pi, 1, a)


@given(small_pi, lams, alphas)
def test_normalized_series_is_rational(pi, lam, alpha):
    pi = Partition(pi)
    v = genseries_numeric(pi, lam, alpha) * QuadExt.s(alpha) ** (pi.size - pi.length)
    assert v.sqrt == 0


@given(small_pi, lams, alphas)
def test_series_equals_character(pi, lam, alpha):
    assert genseries_numeric(pi, lam, alpha) == character(pi, lam, alpha)


@settings(max_examples=30)
@given(small_pi, st.lists(st.integers(0, 4), min_size=2, max_size=2), st.lists(st.integers(0, 4), min_size=2, max_size=2), alphas)
def test_symbolic_matches_numeric(pi, P, Q, alpha):
    # any multirectangular point with Q decreasing is a diagram
    Q = sorted(Q, reverse=True)
    if len(set(Q)) < 2:
        return
    rows = [q for p, q in zip(P, Q) for _ in range(p) if q]
    assert genseries_multirect(pi, P, Q, alpha) == genseries_numeric(pi, rows, alpha)


@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(1, 2))
def test_positive_coefficients(pi, ell):
    assert genseries_symbolic(pi, ell).coefficients_nonnegative()
