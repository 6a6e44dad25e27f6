"""Schirokauer maps and the p-adic regulator certificates built on them."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sympy import isprime

from PRational.arith.linalg import MatrixModP, det_int, rank_mod_p
from PRational.arith.ntheory import lcm, squarefree_kernel
from PRational.arith.polynomial import (
    IntPolynomial,
    ResidueRing,
    factor_degrees_mod,
    gf_inverse,
    polmod_pow,
)
from PRational.fields.cubic import AlgebraicNumber, CyclicCubicField, automorphism
from PRational.fields.quadratic import (
    QuadraticField,
    fundamental_unit_mod,
    unit_exponent,
    unit_log_mod_p,
)
from PRational.logging import LOGGER
from PRational.utils.exceptions import BadSupport, RamifiedPrime
from PRational.utils.verdict import Tri


@dataclass(frozen=True)
class LambdaVector:
    p: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(x % self.p for x in self.entries))

    def __add__(self, other: "LambdaVector") -> "LambdaVector":
        return LambdaVector(self.p, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LambdaVector") -> "LambdaVector":
        return LambdaVector(self.p, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, k: int) -> "LambdaVector":
        return LambdaVector(self.p, tuple(k * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class SchirokauerContext:
    """Data of the map (a^E - 1)/p mod <p, f> for monic f and E = p^e - 1."""

    def __init__(self, f: IntPolynomial, p: int):
        if not f.is_monic():
            raise ValueError(f"{f} is not monic")
        if p % 2 == 0 or not isprime(p):
            raise ValueError(f"{p} is not an odd prime")
        if f.discriminant() % p == 0:
            raise RamifiedPrime(f"{p} divides the discriminant of {f}")
        self.f = f
        self.p = p
        self.e = lcm(*factor_degrees_mod(f, p))
        self.E = p ** self.e - 1
        self.ring = ResidueRing(p * p, f)

    @property
    def degree(self) -> int:
        return self.f.degree

    def zero(self) -> LambdaVector:
        return LambdaVector(self.p, (0,) * self.degree)

    def __repr__(self) -> str:
        return f"SchirokauerContext({self.f}, p={self.p}, e={self.e})"


def _lambda(ctx: SchirokauerContext, a: IntPolynomial) -> LambdaVector:
    p = ctx.p
    try:
        gf_inverse(a.reduce(p), ctx.f, p)
    except ZeroDivisionError:
        raise BadSupport(f"{a} is not prime to {p} modulo {ctx.f}")
    power = polmod_pow(ctx.ring(a), ctx.E) - 1
    if any(c % p for c in power.value):
        raise ArithmeticError(f"{a}^{ctx.E} is not 1 modulo {p}")
    return LambdaVector(p, tuple(c // p for c in power.value))


def schirokauer(ctx: SchirokauerContext, numerator: IntPolynomial,
                denominator: IntPolynomial = None) -> LambdaVector:
    value = _lambda(ctx, numerator)
    if denominator is not None:
        value = value - _lambda(ctx, denominator)
    return value


def schirokauer_element(ctx: SchirokauerContext, x: AlgebraicNumber) -> LambdaVector:
    num, den = x.as_fraction()
    if den % ctx.p == 0:
        raise BadSupport(f"denominator {den} of {x} is divisible by {ctx.p}")
    return schirokauer(ctx, num, IntPolynomial.constant(den))


@dataclass
class RegCertificate:
    conductor: int
    p: int
    rows: Tuple[Tuple[int, ...], ...]
    rank: int

    @property
    def not_divisible(self) -> bool:
        return self.rank == 2

    def to_tri(self) -> Tri:
        if self.not_divisible:
            return Tri.yes("schirokauer-rank", conductor=self.conductor, p=self.p)
        return Tri.unknown("regulator-inconclusive", conductor=self.conductor, p=self.p,
                           rank=self.rank)

    def as_dict(self) -> dict:
        return {"conductor": self.conductor, "p": self.p, "rank": self.rank,
                "rows": [list(r) for r in self.rows]}


def matrix_rank(rows: Sequence[LambdaVector]) -> int:
    p = rows[0].p
    return rank_mod_p(MatrixModP(p, [list(r) for r in rows]))


def reg_certificate_cubic(cubic: CyclicCubicField, unit: AlgebraicNumber, p: int) -> RegCertificate:
    if p == 3:
        raise RamifiedPrime("p = 3 is excluded from the regulator certificate")
    ctx = SchirokauerContext(cubic.poly, p)
    sigma = automorphism(cubic)
    rows = [schirokauer_element(ctx, unit), schirokauer_element(ctx, sigma(unit))]
    rank = matrix_rank(rows)
    if rank < 2:
        LOGGER(__name__).debug(f"{cubic}: Schirokauer rank {rank} at p = {p}")
    return RegCertificate(cubic.conductor, p, tuple(r.entries for r in rows), rank)


def shanks_polynomial(a: int) -> IntPolynomial:
    """x³ - a x² - (a+3) x - 1, the simplest cubic with units α and -(α+1)/α."""
    return IntPolynomial((-1, -(a + 3), -a, 1))


def simplest_cubic_m(a: int) -> int:
    """a² + 3a + 9, the square root of the discriminant; the conductor when it is prime."""
    return a * a + 3 * a + 9


def simplest_cubic_rank(a: int, p: int = 5) -> int:
    """Rank of the Schirokauer matrix of the units α and -(α+1)/α of the simplest cubic."""
    f = shanks_polynomial(a)
    ctx = SchirokauerContext(IntPolynomial(f.reduce(p * p)), p)
    alpha = IntPolynomial.x()
    lam_alpha = schirokauer(ctx, alpha)
    # λ(-1) = 0 since E is even
    lam_other = schirokauer(ctx, alpha + IntPolynomial.constant(1), alpha)
    return matrix_rank([lam_alpha, lam_other])


def quad_lambda(field: QuadraticField, p: int) -> LambdaVector:
    """λ of the fundamental unit in the basis (1, √d)."""
    if not field.is_real:
        raise ValueError("quad_lambda needs a real quadratic field")
    E = unit_exponent(field, p)
    return LambdaVector(p, unit_log_mod_p(fundamental_unit_mod(field, p), E))


def quadratic_unit_log(d: int, p: int) -> int:
    """√d coordinate of λ(ε); zero exactly when the fundamental unit is p-primary."""
    return quad_lambda(QuadraticField(d), p).entries[1]


def kuroda_logs(d_a: int, d_b: int, p: int) -> List[int]:
    d_c = squarefree_kernel(d_a * d_b)
    if min(d_a, d_b, d_c) <= 1:
        raise ValueError(f"({d_a}, {d_b}) do not give three real quadratic subfields")
    return [quadratic_unit_log(d, p) for d in (d_a, d_b, d_c)]


def kuroda_regulator_identity(d_a: int, d_b: int, p: int) -> bool:
    l1, l2, l3 = kuroda_logs(d_a, d_b, p)
    det = det_int([[l1, -l1, l1], [l2, l2, -l2], [l3, -l3, -l3]])
    return (det - (-4) * l1 * l2 * l3) % p == 0

