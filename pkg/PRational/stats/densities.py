"""Conjectural densities of class number and regulator divisibility."""

from fractions import Fraction

import mpmath
from sympy import factorint

from PRational.arith.ntheory import mult_order

TAIL = mpmath.mpf("1e-18")


def pochhammer_ratio(x: int) -> mpmath.mpf:
    """(x)_∞ / (x)_1 = prod_{k ≥ 2} (1 - x^-k), truncated once the factors reach 1 - 1e-18."""
    x = mpmath.mpf(x)
    out = mpmath.mpf(1)
    k = 2
    while True:
        term = x ** (-k)
        if term < TAIL:
            return out
        out *= 1 - term
        k += 1


def prob_not_dividing_class(q: int, p: int) -> mpmath.mpf:
    """Prob(p ∤ h) for cyclic fields of odd prime degree q."""
    if p % q == 0:
        raise ValueError(f"p = {p} divides q = {q}")
    omega = mult_order(p, q)
    return pochhammer_ratio(p ** omega) ** ((q - 1) // omega)


def expected_density_class(q: int, p: int) -> float:
    if q % 2 == 0:
        raise ValueError("the class density is stated for odd prime degree")
    return float(1 - prob_not_dividing_class(q, p))


def expected_density_class_martinet(m: int) -> float:
    """Prob(m | h) for cyclic cubic fields, m prime to 3."""
    if m % 3 == 0 or m < 1:
        raise ValueError(f"m = {m} must be positive and prime to 3")
    out = mpmath.mpf(1)
    for p in factorint(m):
        if p % 3 == 1:
            out *= 1 - pochhammer_ratio(p) ** 2
        else:
            out *= 1 - pochhammer_ratio(p * p)
    return float(out)


def expected_density_regulator(p: int) -> Fraction:
    """Prob(p | R'_p) for cyclic cubic fields."""
    if p <= 3:
        raise ValueError("p must exceed 3")
    if p % 3 == 2:
        return Fraction(1, p * p)
    return Fraction(2, p) - Fraction(1, p * p)


def subfield_count(q: int, t: int) -> int:
    return (q ** t - 1) // (q - 1)


def expected_density_compositum(q: int, t: int, p: int) -> float:
    """Probability that some cyclic degree-q subfield of a (Z/q)^t field has p | R'."""
    if q == 2:
        single = Fraction(1, p)
    elif q == 3:
        single = expected_density_regulator(p)
    else:
        raise ValueError(f"q = {q} is not supported")
    if p <= q:
        raise ValueError(f"p = {p} must exceed q = {q}")
    return float(1 - (1 - single) ** subfield_count(q, t))


def expected_density_class_compositum(q: int, t: int, p: int) -> float:
    """Prob(p | h) for (Z/q)^t fields through the class numbers of the cyclic subfields."""
    n = subfield_count(q, t)
    if q == 2:
        keep = pochhammer_ratio(p) ** n
    elif q == 3:
        if p % 3 == 1:
            keep = pochhammer_ratio(p) ** (2 * n)
        else:
            keep = pochhammer_ratio(p * p) ** n
    else:
        raise ValueError(f"q = {q} is not supported")
    return float(1 - keep)


def relative_error(stat: float, conj: float) -> float:
    if conj == 0:
        return float("inf") if stat else 0.0
    return abs(stat - conj) / conj
