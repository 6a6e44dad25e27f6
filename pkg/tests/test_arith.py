import random
from fractions import Fraction

import pytest

from PRational.arith.finitefield import FiniteField, discrete_log_table, finite_field_with_root_of_unity
from PRational.arith.linalg import (
    IntegerLattice,
    MatrixModP,
    det_int,
    lll_reduce,
    lll_transform,
    rank_mod_p,
    row_hnf,
)
from PRational.arith.ntheory import (
    cornacchia_27,
    cubic_conductors,
    is_cubic_conductor,
    mult_order,
    rational_reconstruction,
    squarefree_kernel,
    squarefree_range,
)
from PRational.arith.polynomial import (
    IntPolynomial,
    ResidueRing,
    cyclotomic_poly,
    factor_degrees_mod,
    format_poly,
    gf_inverse,
    hensel_root,
    is_irreducible_mod,
    poly_mul,
    roots_mod,
)
from PRational.utils.exceptions import NoReconstruction, NoRepresentation, NotCoprime


def test_cyclotomic_small():
    assert cyclotomic_poly(1) == IntPolynomial((-1, 1))
    assert cyclotomic_poly(7) == IntPolynomial((1,) * 7)
    assert cyclotomic_poly(12) == IntPolynomial((1, 0, -1, 0, 1))


def test_cyclotomic_product_identity():
    for n in range(1, 201):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                prod = poly_mul(prod, cyclotomic_poly(d).coeffs)
        assert IntPolynomial(prod) == IntPolynomial([-1] + [0] * (n - 1) + [1])


def test_mult_order():
    assert mult_order(11, 7) == 3
    assert mult_order(1, 13) == 1
    assert mult_order(2, 9) == 6
    with pytest.raises(NotCoprime):
        mult_order(3, 9)


def test_irreducibility_mod_q():
    assert is_irreducible_mod(IntPolynomial((-2, 0, 1)), 5)
    assert not is_irreducible_mod(IntPolynomial((-1, 0, 1)), 5)
    assert not is_irreducible_mod(cyclotomic_poly(7), 11)
    assert is_irreducible_mod(cyclotomic_poly(7), 3)
    assert sorted(factor_degrees_mod(cyclotomic_poly(7), 11)) == [3, 3]


def test_roots_and_inverse_mod_q():
    f = IntPolynomial((-1, -2, 1, 1))
    for r in roots_mod(f, 13):
        assert f(r) % 13 == 0
    modulus = IntPolynomial((-2, 0, 1))
    inv = gf_inverse((1, 1), modulus, 5)
    ring = ResidueRing(5, modulus)
    assert (ring((1, 1)) * ring(inv)).is_one()


def test_hensel_root_lifts():
    f = IntPolynomial((-2, 0, 1))
    r = hensel_root(f, 3, 7, 6)
    assert f(r) % 7 ** 6 == 0


def test_finite_field_with_root_of_unity():
    field, zeta = finite_field_with_root_of_unity(11, 7, seed=1)
    assert field.cardinality == 11 ** 3
    assert (zeta ** 7).is_one() and not zeta.is_one()
    field, zeta = finite_field_with_root_of_unity(13, 1, seed=1)
    assert field.degree == 1 and zeta.is_one()
    field, zeta = finite_field_with_root_of_unity(2, 7, seed=3)
    assert field.degree == 3 and field.has_order(zeta, 7)
    with pytest.raises(NotCoprime):
        finite_field_with_root_of_unity(7, 14)


def test_discrete_log_table_is_complete():
    field = FiniteField(11, IntPolynomial((0, 1)), check=False)
    table = discrete_log_table(field, field(2), 10)
    assert sorted(table.values()) == list(range(10))


def test_random_field_draws_an_irreducible_modulus():
    rng = random.Random(5)
    field = FiniteField.random_field(7, 3, rng)
    assert field.degree == 3 and field.cardinality == 343
    assert is_irreducible_mod(field.modulus, 7)
    assert len(field.random_element(rng).value) == 3
    assert FiniteField.random_field(7, 1, rng).degree == 1


def test_class_test_module_imports():
    from PRational.certificates import classtest

    assert classtest.gras_vdl


def test_residue_ring_powers():
    ring = ResidueRing(5, IntPolynomial((-2, 0, 1)))
    x = ring.gen()
    assert (x ** 0).is_one()
    assert x ** 1 == x
    assert x ** 24 == 4


def test_lll_on_small_lattices():
    assert lll_reduce(IntegerLattice([[1, 0], [0, 1]])).hnf() == ((1, 0), (0, 1))
    L = IntegerLattice([[1, 0], [10, 1]])
    B = lll_reduce(L)
    assert all(sum(x * x for x in v) <= 2 for v in B.basis)
    assert B.hnf() == L.hnf()


def test_lll_preserves_lattice():
    rng = random.Random(7)
    for _ in range(25):
        rows = [[rng.randint(-50, 50) for _ in range(3)] for _ in range(3)]
        if det_int(rows) == 0:
            continue
        L = IntegerLattice(rows)
        B, T = lll_transform(L, Fraction(3, 4))
        assert B.hnf() == L.hnf()
        assert abs(det_int(T)) == 1
        assert abs(B.gram_det()) == L.gram_det()


def test_rank_mod_p():
    assert rank_mod_p(MatrixModP(5, [[0, 0], [0, 0]])) == 0
    assert rank_mod_p(MatrixModP(7, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank_mod_p(MatrixModP(5, [[1, 2, 3], [2, 4, 6]])) == 1
    assert rank_mod_p(MatrixModP(5, [[1, 2], [3, 1]])) == 1


def test_row_hnf_is_canonical():
    assert row_hnf([[2, 0], [0, 3]]) == row_hnf([[2, 3], [0, 3]])


def test_cornacchia_27():
    assert cornacchia_27(7) == [(1, 1)]
    assert cornacchia_27(13) == [(-5, 1)]
    assert len(cornacchia_27(63)) == 2
    with pytest.raises(NoRepresentation):
        cornacchia_27(5)


def test_cubic_conductors():
    assert list(cubic_conductors(9)) == [7, 9]
    assert is_cubic_conductor(63) and not is_cubic_conductor(27) and not is_cubic_conductor(49)


def test_rational_reconstruction():
    assert rational_reconstruction(51, 101) == (1, 2)
    assert rational_reconstruction(0, 101) == (0, 1)
    r = -3 * pow(7, -1, 10007) % 10007
    assert rational_reconstruction(r, 10007) == (-3, 7)
    with pytest.raises(NoReconstruction):
        rational_reconstruction(200, 101)


def test_squarefree_helpers():
    assert squarefree_kernel(12) == 3
    assert squarefree_kernel(-50) == -2
    assert squarefree_range(-3, 6) == [-3, -2, -1, 2, 3, 5, 6]


def test_format_poly():
    assert format_poly((-1, -2, 1, 1)) == "x^3 + x^2 - 2*x - 1"
    assert format_poly(()) == "0"
