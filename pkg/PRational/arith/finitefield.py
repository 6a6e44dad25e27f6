import random
from typing import Optional, Tuple

from sympy import factorint

from PRational.arith.ntheory import mult_order
from PRational.arith.polynomial import (
    IntPolynomial,
    ResiduePolyElement,
    ResidueRing,
    gf_inverse,
    is_irreducible_mod,
)
from PRational.utils.exceptions import FieldConstructionError, NotCoprime


class FiniteField:
    """F_{q^d} as F_q[x]/<modulus>."""

    def __init__(self, q: int, modulus: IntPolynomial, check: bool = True):
        if check and not is_irreducible_mod(modulus, q):
            raise FieldConstructionError(f"{modulus} is reducible mod {q}")
        self.q = q
        self.modulus = modulus
        self.degree = modulus.degree
        self.ring = ResidueRing(q, modulus)

    @classmethod
    def random_field(cls, q: int, d: int, rng: random.Random) -> "FiniteField":
        if d == 1:
            return cls(q, IntPolynomial((0, 1)), check=False)
        for _ in range(100 * d):
            coeffs = [rng.randrange(q) for _ in range(d)] + [1]
            candidate = IntPolynomial(coeffs)
            if is_irreducible_mod(candidate, q):
                return cls(q, candidate, check=False)
        raise FieldConstructionError(
            f"no irreducible polynomial of degree {d} mod {q} after {100 * d} draws"
        )

    @property
    def cardinality(self) -> int:
        return self.q ** self.degree

    def __call__(self, value) -> ResiduePolyElement:
        return self.ring(value)

    def one(self) -> ResiduePolyElement:
        return self.ring.one()

    def random_element(self, rng: random.Random) -> ResiduePolyElement:
        return self.ring(tuple(rng.randrange(self.q) for _ in range(self.degree)))

    def inverse(self, a: ResiduePolyElement) -> ResiduePolyElement:
        if a.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self.ring(gf_inverse(a.value, self.modulus, self.q))

    def divide(self, a: ResiduePolyElement, b: ResiduePolyElement) -> ResiduePolyElement:
        return a * self.inverse(b)

    def has_order(self, z: ResiduePolyElement, m: int) -> bool:
        if not (z ** m).is_one():
            return False
        return all(not (z ** (m // ell)).is_one() for ell in factorint(m))

    def __repr__(self) -> str:
        return f"FiniteField({self.q}^{self.degree})"


def finite_field_with_root_of_unity(
    q: int, m: int, seed: Optional[int] = None, field: Optional[FiniteField] = None
) -> Tuple[FiniteField, ResiduePolyElement]:
    if m % q == 0:
        raise NotCoprime(f"characteristic {q} divides {m}")
    rng = random.Random(seed)
    d = mult_order(q, m)
    if field is None:
        field = FiniteField.random_field(q, d, rng)
    elif (field.cardinality - 1) % m:
        raise FieldConstructionError(f"{field} has no element of order {m}")
    if m == 1:
        return field, field.one()
    cofactor = (field.cardinality - 1) // m
    for _ in range(200):
        g = field.random_element(rng)
        if g.is_zero():
            continue
        zeta = g ** cofactor
        if field.has_order(zeta, m):
            return field, zeta
    raise FieldConstructionError(f"no element of order {m} found in {field}")


def discrete_log_table(
    field: FiniteField, generator: ResiduePolyElement, order: int
) -> dict:
    """Map each power of generator to its exponent in [0, order)."""
    table = {}
    current = field.one()
    for k in range(order):
        table[current.value] = k
        current = current * generator
    return table

