from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from jackmaps.algebra import GammaPoly, MultivarPoly, QuadExt, gamma_value
from jackmaps.jack import (
    InterpolationError,
    JackBoundError,
    branching_coefficient,
    character,
    character_multirect,
    duality_check,
    jack_character,
    jack_powersum,
    jack_scalar_product,
    lassalle_normalization,
    m1n_coefficient,
    sn_character,
    sn_normalized_character,
    theta,
    theta_at,
    verify_character_parts1,
    verify_lassalle_recurrence,
)
from jackmaps.partition import Partition, partitions_of

A = GammaPoly((0, 1))  # the polynomial alpha


def test_small_jack_polynomials():
    assert jack_powersum((1,)).coeffs == {Partition((1,)): GammaPoly.constant(1)}
    J2 = jack_powersum((2,))
    assert J2[(1, 1)] == GammaPoly.constant(1) and J2[(2,)] == A
    J11 = jack_powersum((1, 1))
    assert J11[(1, 1)] == GammaPoly.constant(1) and J11[(2,)] == GammaPoly.constant(-1)


def test_theta_examples():
    assert theta((2,), (2,)) == A
    assert theta((1, 1), (1, 1)) == GammaPoly.constant(1)
    assert theta((2,), (1, 1)) == GammaPoly.constant(-1)
    with pytest.raises(ValueError):
        theta((2,), (1,))


def test_bound():
    with pytest.raises(JackBoundError):
        jack_powersum((5, 5))


def test_character_examples():
    assert character((1,), (3, 1), Fraction(5, 7)) == 4
    v = character((2,), (2,), 3)
    assert (v.rat, v.sqrt) == (0, 2)
    assert character((2,), (1, 1), 1) == -2
    assert character((3,), (2,), 2) == 0


def test_normalization():
    v = lassalle_normalization(jack_character((2,), (2,), Fraction(7, 3)))
    assert v.is_rational() and v.rat == Fraction(14, 3)
    assert lassalle_normalization(jack_character((1,), (1,), 5)) == 1
    ch = jack_character((3,), (3,), 1)
    assert lassalle_normalization(ch) == ch.value


def test_duality_examples():
    assert duality_check((2,), (2,), 2)
    assert duality_check((1,), (4, 2), Fraction(3, 5))
    assert duality_check((3,), (2, 1), 3)


def test_lassalle_recurrence_examples():
    assert verify_lassalle_recurrence((2,), 2, 2, 1)
    assert verify_lassalle_recurrence((3,), 1, 4, Fraction(1, 2))
    assert verify_lassalle_recurrence((2, 2), 3, 2, 3)


def test_multirect_examples():
    V2 = ("p_1", "p_2", "q_1", "q_2")
    one = QuadExt(Fraction(7, 3), 1)
    got = character_multirect((1,), 2, Fraction(7, 3))
    assert got == MultivarPoly(V2, {(1, 0, 1, 0): one, (0, 1, 0, 1): one})
    got = character_multirect((2,), 1, 1)
    assert got == MultivarPoly(("p_1", "q_1"), {(1, 2): 1, (2, 1): -1})
    alpha = Fraction(2)
    s = QuadExt.s(alpha)
    want = MultivarPoly(("p_1", "q_1"), {(1, 2): s, (2, 1): -(s / alpha), (1, 1): gamma_value(alpha)})
    assert character_multirect((2,), 1, alpha) == want


def test_multirect_instability_detected():
    with pytest.raises(InterpolationError):
        character_multirect((3,), 1, 2, degree=2)


def test_orthogonality_and_normalization():
    for n in range(1, 7):
        lams = partitions_of(n)
        for i, lam in enumerate(lams):
            assert m1n_coefficient(lam) == GammaPoly.constant(factorial(n))
            for mu in lams[i + 1:]:
                assert jack_scalar_product(lam, mu) == GammaPoly()


def test_polynomiality_matches_fixed_alpha():
    for lam in partitions_of(5):
        J = jack_powersum(lam)
        for a in (Fraction(1, 3), Fraction(9, 2)):
            for rho in partitions_of(5):
                assert J[rho](a) == theta_at(rho, lam, a)


def test_symmetric_group_characters():
    assert sn_character((2, 1), (1, 1, 1)) == 2
    assert sn_character((2, 1), (3,)) == -1
    for n in range(1, 8):
        for lam in partitions_of(n):
            for k in range(1, n + 1):
                for pi in partitions_of(k):
                    assert character(pi, lam, 1) == sn_normalized_character(pi, lam)


def test_branching_matches_direct():
    for lam in partitions_of(7):
        for pi in [(2,), (3, 2), (2, 2, 1), (4,)]:
            for a in (Fraction(1, 2), 2):
                assert character(pi, lam, a, method="direct") == character(pi, lam, a, method="branching")


def test_branching_coefficient_sums():
    # p_1-derivative of J_(2,1) lands on J_(2) and J_(1,1)
    lam = Partition((2, 1))
    assert branching_coefficient(lam, Partition((2,)), 1) > 0


def test_large_diagram_uses_branching():
    # |lambda| = 12 is beyond the direct construction
    v = character((2,), (4, 4, 4), 1)
    # Sum of contents times 2 for the rectangle 3 x 4 at alpha = 1
    contents = sum(j - i for i in range(3) for j in range(4))
    assert v == 2 * contents


alphas = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(7, 2)])
small = st.integers(1, 6).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@given(small, small, alphas)
def test_duality(pi, lam, alpha):
    assert duality_check(pi, lam, alpha)


@given(st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(1, 2),
       st.integers(1, 7).flatmap(lambda n: st.sampled_from(partitions_of(n))), alphas)
def test_parts_equal_to_one(pi, l, lam, alpha):
    assert verify_character_parts1(pi, l, lam, alpha)


@given(small, small, alphas)
def test_normalized_value_is_rational(pi, lam, alpha):
    assert lassalle_normalization(jack_character(pi, lam, alpha)).is_rational()
