"""Identities shared by the map series and the Jack characters.

Each takes ``F(pi, lam, alpha) -> QuadExt`` so the same code checks both sides.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import QuadExt, gamma_value
from .partition import Partition, falling_factorial


def parts1_sides(pi, l, lam, alpha, F):
    """F(pi + 1^l, lam) and (|lam| - |pi|)_l * F(pi, lam)."""
    pi, lam = Partition(pi), Partition(lam)
    lhs = F(pi.with_ones(l), lam, alpha)
    rhs = F(pi, lam, alpha) * falling_factorial(lam.size - pi.size, l)
    return lhs, rhs


def rect_recurrence_sides(pi, p, q, alpha, F):
    """Both sides of the recurrence on the rectangle p x q, for pi without parts 1.

    The interface sum runs over ordered pairs of part values (r, s).
    """
    pi = Partition(pi)
    if pi.m(1):
        raise ValueError("the recurrence needs a partition without parts equal to 1")
    alpha = Fraction(alpha)
    lam = Partition([q] * p) if q > 0 else Partition()
    s = QuadExt.s(alpha)
    gamma = gamma_value(alpha)
    coef = s * Fraction(p) / alpha - s * q
    mult = pi.multiplicities()
    zero = QuadExt(alpha, 0)
    leaf = straight = twisted = interface = zero
    for r, m in mult.items():
        down = F(pi.down(r), lam, alpha)
        leaf = leaf + down * (r * m)
        twisted = twisted + down * (r * (r - 1) * m)
        for i in range(1, r - 1):
            straight = straight + F(pi.up(i, r - i - 1), lam, alpha) * (r * m)
    for r, mr in mult.items():
        for t, mt in mult.items():
            c = r * t * mr * (mt - (1 if r == t else 0))
            if c:
                interface = interface + F(pi.join(r, t), lam, alpha) * c
    lhs = coef * leaf + straight - gamma * twisted + interface
    rhs = F(pi, lam, alpha) * (-pi.size)
    return lhs, rhs
