import random
from math import gcd

import pytest

from PRational.arith.ntheory import is_squarefree, squarefree_kernel
from PRational.fields.quadratic import (
    QuadraticField,
    class_number,
    class_number_imaginary,
    class_number_real,
    fundamental_unit_mod,
    has_p_primary_unit,
    is_p_rational_quadratic,
    pell_exception_primes,
    unit_exponent,
    unit_log_mod_p,
)
from PRational.utils.exceptions import RamifiedPrime


def brute_force_class_number(D: int) -> int:
    """Reduced forms of discriminant D < 0 by plain search."""
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
        a += 1
    return count


def test_field_basics():
    K = QuadraticField(5)
    assert K.discriminant == 5 and K.is_real
    assert QuadraticField(-1).discriminant == -4
    assert QuadraticField(3).polynomial() == (-3, 0, 1)
    with pytest.raises(ValueError):
        QuadraticField(12)
    with pytest.raises(ValueError):
        QuadraticField(1)


def test_unit_residues():
    eps = fundamental_unit_mod(QuadraticField(2), 5)
    assert (eps.u, eps.v, eps.norm_sign) == (1, 1, -1)
    eps = fundamental_unit_mod(QuadraticField(5), 7)
    assert (eps.u, eps.v, eps.norm_sign) == (25, 25, -1)
    eps = fundamental_unit_mod(QuadraticField(3), 5)
    assert (eps.u, eps.v, eps.norm_sign) == (2, 1, 1)


def test_unit_norm_relation_on_random_fields():
    rng = random.Random(2024)
    for _ in range(300):
        d = rng.randint(2, 5000)
        if not is_squarefree(d):
            continue
        p = rng.choice([5, 7, 11, 13, 17, 19, 23, 101])
        eps = fundamental_unit_mod(QuadraticField(d), p)
        assert eps.norm_residue() == eps.norm_sign % (p * p)


@pytest.mark.parametrize("d, h", [(-163, 1), (-1, 1), (-23, 3), (-5, 2), (-47, 5), (-14, 4)])
def test_imaginary_class_numbers(d, h):
    assert class_number_imaginary(d) == h


def test_imaginary_class_numbers_against_brute_force():
    for d in range(-200, 0):
        if is_squarefree(d):
            assert class_number(d) == brute_force_class_number(QuadraticField(d).discriminant)


@pytest.mark.parametrize("d, h", [(2, 1), (10, 2), (5, 1), (3, 1), (79, 3), (82, 4), (226, 8)])
def test_real_class_numbers(d, h):
    assert class_number_real(d) == h


def test_p_primary_units():
    assert not has_p_primary_unit(QuadraticField(2), 5)
    eps = fundamental_unit_mod(QuadraticField(2), 5)
    E = unit_exponent(QuadraticField(2), 5)
    assert unit_log_mod_p(eps, E) != (0, 0)
    # a p-th power is p-primary
    assert unit_log_mod_p(eps.power(5), E) == (0, 0)
    with pytest.raises(RamifiedPrime):
        unit_exponent(QuadraticField(5), 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29])
def test_p_squared_minus_one_family_has_no_p_primary_unit(p):
    d = squarefree_kernel(p * p - 1)
    assert not has_p_primary_unit(QuadraticField(d), p)


def test_p_rationality_of_quadratic_fields():
    assert is_p_rational_quadratic(QuadraticField(-163), 7).is_yes
    assert is_p_rational_quadratic(QuadraticField(30), 11).is_yes
    assert is_p_rational_quadratic(QuadraticField(-3), 3).is_unknown
    assert is_p_rational_quadratic(QuadraticField(-47), 5).is_unknown
    with pytest.raises(ValueError):
        is_p_rational_quadratic(QuadraticField(2), 9)


def test_pell_exception_primes():
    exceptions = pell_exception_primes(100)
    assert {7, 17, 31, 71, 97} <= exceptions
    assert 11 not in exceptions and 5 not in exceptions
