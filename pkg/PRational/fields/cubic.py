"""Cyclic cubic fields given by conductor and the arithmetic of their elements."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from math import gcd, isqrt
from typing import Iterable, List, Sequence, Tuple

import mpmath
from sympy import divisors, factorint, nextprime, primitive_root

from PRational.arith.linalg import (
    charpoly_rational,
    det_int,
    det_rational,
    row_hnf,
    solve_rational,
)
from PRational.arith.ntheory import (
    cornacchia_27,
    is_cubic_conductor,
    rational_reconstruction,
    validate_cubic_conductor,
)
from PRational.arith.polynomial import (
    IntPolynomial,
    format_poly,
    hensel_root,
    interpolate_mod,
    poly_mul,
    roots_mod,
)
from PRational.logging import LOGGER
from PRational.utils.exceptions import (
    IndexDivisor,
    InvalidConductor,
    LiftFailure,
    NotInFamily,
    NoReconstruction,
)

Coords = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class CubicCharacter:
    """Cubic Dirichlet character of exact conductor, stored by component exponents."""

    conductor: int
    components: Tuple[int, ...]
    exponents: Tuple[int, ...]

    @cached_property
    def _cube_roots(self) -> Tuple[int, ...]:
        out = []
        for q in self.components:
            out.append(pow(primitive_root(q), (q - 1) // 3, q) if q != 9 else 0)
        return tuple(out)

    def _index(self, x: int, k: int) -> int:
        q = self.components[k]
        if q == 9:
            return {1: 0, 4: 1, 7: 2}[x * x % 9]
        t = pow(x, (q - 1) // 3, q)
        if t == 1:
            return 0
        return 1 if t == self._cube_roots[k] else 2

    def __call__(self, x: int) -> int:
        """Exponent j with chi(x) = w^j, or -1 when gcd(x, m) > 1."""
        if gcd(x, self.conductor) != 1:
            return -1
        return sum(e * self._index(x % q, k) for k, (q, e) in
                   enumerate(zip(self.components, self.exponents))) % 3

    def kernel(self) -> List[int]:
        return [x for x in range(1, self.conductor) if self(x) == 0]

    def generator_outside_kernel(self) -> int:
        """Smallest g with chi(g) = 1."""
        for g in range(2, self.conductor):
            if self(g) == 1:
                return g
        raise ArithmeticError(f"character of conductor {self.conductor} is trivial")


def cubic_characters(m: int) -> List[CubicCharacter]:
    """One character from each conjugate pair of exact conductor m."""
    validate_cubic_conductor(m)
    components = tuple(sorted(9 if p == 3 else p for p in factorint(m)))
    out = []
    for tail in product((1, 2), repeat=len(components) - 1):
        out.append(CubicCharacter(m, components, (1,) + tail))
    return out


def _cubic_poly(m: int, a: int) -> IntPolynomial:
    if a % 3:
        return IntPolynomial((-(m * (3 + a) - 1) // 27, (1 - m) // 3, 1, 1))
    return IntPolynomial((-(a * m) // 27, -(m // 3), 0, 1))


def _has_root_mod(f: IntPolynomial, ell: int) -> bool:
    return any(f(x) % ell == 0 for x in range(ell))


@dataclass(frozen=True)
class CyclicCubicField:
    conductor: int
    a: int
    b: int
    poly: IntPolynomial

    @classmethod
    def from_rep(cls, m: int, a: int, b: int) -> "CyclicCubicField":
        if a * a + 27 * b * b != 4 * m:
            raise InvalidConductor(f"(a, b) = ({a}, {b}) does not represent 4*{m}")
        return cls(m, a, b, _cubic_poly(m, a))

    @classmethod
    def from_polynomial(cls, f: IntPolynomial) -> "CyclicCubicField":
        """Identify the conductor and normalized representation of a monic cyclic cubic."""
        if f.degree != 3 or not f.is_monic():
            raise ValueError("a monic cubic is required")
        disc = f.discriminant()
        root = isqrt(disc) if disc > 0 else -1
        if root * root != disc:
            raise InvalidConductor(f"{format_poly(f.coeffs)} is not a cyclic cubic")
        candidates = []
        for m in sorted(int(d) for d in divisors(root)):
            if is_cubic_conductor(m):
                for a, b in cornacchia_27(m):
                    candidates.append(cls.from_rep(m, a, b))
        ell = 2
        while len(candidates) > 1:
            if root % ell:
                split = _has_root_mod(f, ell)
                candidates = [
                    K for K in candidates
                    if (K.character(ell) == 0) == split
                ]
            ell = int(nextprime(ell))
        if not candidates:
            raise InvalidConductor(f"no cyclic cubic field matches {format_poly(f.coeffs)}")
        K = candidates[0]
        return cls(K.conductor, K.a, K.b, f)

    @cached_property
    def discriminant(self) -> int:
        return self.poly.discriminant()

    @cached_property
    def index(self) -> int:
        """[O_K : Z[alpha]], from disc(f) = m² index²."""
        return isqrt(self.discriminant) // self.conductor

    @property
    def is_normalized(self) -> bool:
        return self.poly == _cubic_poly(self.conductor, self.a)

    @property
    def conductor_primes(self) -> List[int]:
        return sorted(factorint(self.conductor))

    @cached_property
    def character(self) -> CubicCharacter:
        chars = cubic_characters(self.conductor)
        ell = 2
        while len(chars) > 1:
            if (self.conductor * self.index) % ell:
                split = _has_root_mod(self.poly, ell)
                chars = [c for c in chars if (c(ell) == 0) == split]
            ell = int(nextprime(ell))
        if not chars:
            raise InvalidConductor(f"{self} matches no cubic character")
        return chars[0]

    def element(self, coords: Sequence) -> "AlgebraicNumber":
        return AlgebraicNumber(self, tuple(Fraction(c) for c in coords))

    @property
    def alpha(self) -> "AlgebraicNumber":
        return self.element((0, 1, 0))

    def one(self) -> "AlgebraicNumber":
        return self.element((1, 0, 0))

    def real_roots(self, dps: int = 50) -> List[mpmath.mpf]:
        with mpmath.workdps(dps):
            roots = mpmath.polyroots(
                [int(c) for c in reversed(self.poly.coeffs)], maxsteps=200, extraprec=2 * dps
            )
            return sorted(mpmath.re(r) for r in roots)

    @property
    def label(self) -> str:
        return f"{self.conductor}:{self.a}:{self.b}"

    def __str__(self) -> str:
        return f"CyclicCubicField(m={self.conductor}, f={format_poly(self.poly.coeffs)})"


class AlgebraicNumber:
    """c0 + c1 alpha + c2 alpha² with rational coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CyclicCubicField, coords: Coords):
        self.field = field
        self.coords = coords

    def _reduce(self, coeffs: List[Fraction]) -> "AlgebraicNumber":
        f = self.field.poly.coeffs
        buf = list(coeffs) + [Fraction(0)] * max(0, 3 - len(coeffs))
        for i in range(len(buf) - 1, 2, -1):
            c = buf[i]
            if c:
                for j in range(3):
                    buf[i - 3 + j] -= c * f[j]
            buf[i] = Fraction(0)
        return AlgebraicNumber(self.field, tuple(buf[:3]))

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            return other
        return self.field.element((other, 0, 0))

    def __add__(self, other) -> "AlgebraicNumber":
        other = self._coerce(other)
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other) -> "AlgebraicNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AlgebraicNumber":
        return self._coerce(other) - self

    def __mul__(self, other) -> "AlgebraicNumber":
        other = self._coerce(other)
        return self._reduce(poly_mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "AlgebraicNumber":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "AlgebraicNumber":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "AlgebraicNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicNumber):
            other = self._coerce(other)
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def matrix(self) -> List[List[Fraction]]:
        """Multiplication-by-self in the power basis, columns are self * alpha^j."""
        cols = []
        x = self
        for _ in range(3):
            cols.append(x.coords)
            x = x * self.field.alpha
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def norm(self) -> Fraction:
        return det_rational(self.matrix())

    def charpoly(self) -> List[Fraction]:
        return charpoly_rational(self.matrix())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.charpoly())

    def is_unit(self) -> bool:
        return self.is_integral() and abs(self.norm()) == 1

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self.field.element(solve_rational(self.matrix(), (1, 0, 0)))

    def evaluate(self, f: IntPolynomial) -> "AlgebraicNumber":
        acc = self.field.element((0, 0, 0))
        for c in reversed(f.coeffs):
            acc = acc * self + c
        return acc

    def denominator(self) -> int:
        den = 1
        for c in self.coords:
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    def as_fraction(self) -> Tuple[IntPolynomial, int]:
        """(numerator polynomial, integer denominator)."""
        den = self.denominator()
        return IntPolynomial(int(c * den) for c in self.coords), den

    def embed(self, root) -> mpmath.mpf:
        c0, c1, c2 = (mpmath.mpf(c.numerator) / c.denominator for c in self.coords)
        return c0 + c1 * root + c2 * root * root

    def __repr__(self) -> str:
        parts = [str(c) for c in self.coords]
        return f"({parts[0]}) + ({parts[1]})*a + ({parts[2]})*a^2"


@dataclass(frozen=True)
class Automorphism:
    field: CyclicCubicField
    image: AlgebraicNumber

    def __call__(self, x: AlgebraicNumber) -> AlgebraicNumber:
        c0, c1, c2 = x.coords
        return self.image * self.image * c2 + self.image * c1 + c0

    def order(self) -> int:
        alpha = self.field.alpha
        x = self.image
        k = 1
        while x != alpha:
            x = self(x)
            k += 1
            if k > 3:
                raise ArithmeticError("automorphism of order > 3")
        return k


def explicit_unit_minpolys(a: int) -> Tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
    """(g_a, mu_a, nu_a) for odd a and m = (a² + 27)/4."""
    if a % 2 == 0:
        raise NotInFamily(f"a = {a} must be odd")
    m = (a * a + 27) // 4
    g = IntPolynomial((-m, 2 * m, -m, 1))
    A, B = (2 * m - 3 - a) // 2, (2 * m - 3 + a) // 2
    mu = IntPolynomial((-1, B, -A, 1))
    nu = IntPolynomial((-1, 3, m - 3, 1))
    return g, mu, nu


@dataclass(frozen=True)
class ExplicitElements:
    omega: AlgebraicNumber
    eta: AlgebraicNumber
    eta_prime: AlgebraicNumber


def embed_explicit_elements(field: CyclicCubicField) -> ExplicitElements:
    """Roots in K of g_a, mu_a (closed forms) and nu_a (found by lifting)."""
    if field.b != 1 or not field.is_normalized:
        raise NotInFamily(f"{field} is not in the m = (a² + 27)/4 family")
    a = field.a
    shift = Fraction(1, 3) if a % 3 else Fraction(0)
    y = field.alpha + shift
    omega = (y + Fraction(a, 6)) ** 2 + Fraction(3, 4)
    eta = (y + Fraction(a - 3, 6)) ** 2
    g, mu, nu = explicit_unit_minpolys(a)
    if not omega.evaluate(g).is_zero() or not eta.evaluate(mu).is_zero():
        raise ArithmeticError(f"closed forms fail on {field}")
    eta_prime = roots_in_field(field, nu)[0]
    return ExplicitElements(omega, eta, eta_prime)


def _lifting_prime(field: CyclicCubicField, g: IntPolynomial) -> Tuple[int, List[int], List[int]]:
    """Smallest ell > 2^20 splitting f with g squarefree of full degree mod ell."""
    g_disc = g.discriminant()
    ell = int(nextprime(1 << 20))
    while True:
        if field.discriminant % ell and g_disc % ell and g.lc % ell:
            f_roots = roots_mod(field.poly, ell)
            if len(f_roots) == 3:
                return ell, f_roots, roots_mod(g, ell)
        ell = int(nextprime(ell))


def roots_in_field(field: CyclicCubicField, g: IntPolynomial, max_doublings: int = 3) -> List[AlgebraicNumber]:
    """All roots of g lying in K, by Hensel lifting and rational reconstruction."""
    ell, f_roots, g_roots = _lifting_prime(field, g)
    if len(g_roots) < g.degree:
        return []
    height = max(abs(c) for c in field.poly.coeffs + g.coeffs)
    target = 2 * (field.discriminant * height) ** 2
    k = 1
    while ell ** k <= target:
        k += 1
    for _ in range(max_doublings):
        N = ell ** k
        xs = [hensel_root(field.poly, r, ell, k) for r in f_roots]
        ys = [hensel_root(g, r, ell, k) for r in g_roots]
        found = []
        for perm in permutations(ys, 3):
            coeffs = interpolate_mod(xs, list(perm), N)
            try:
                fracs = [Fraction(*rational_reconstruction(c, N)) for c in coeffs]
            except NoReconstruction:
                continue
            candidate = field.element(fracs)
            if candidate.evaluate(g).is_zero() and candidate not in found:
                found.append(candidate)
        if found:
            return sorted(found, key=lambda x: x.coords)
        k *= 2
        LOGGER(__name__).debug(f"lifting {format_poly(g.coeffs)} over {field}: precision {ell}^{k}")
    raise LiftFailure(f"no root of {format_poly(g.coeffs)} reconstructed in {field}")


def automorphisms(field: CyclicCubicField) -> List[Automorphism]:
    """The two non-trivial automorphisms, ordered by coordinates of the image of alpha."""
    images = [x for x in roots_in_field(field, field.poly) if x != field.alpha]
    if len(images) != 2:
        raise LiftFailure(f"found {len(images)} conjugates of alpha in {field}")
    return [Automorphism(field, x) for x in images]


def automorphism(field: CyclicCubicField) -> Automorphism:
    return automorphisms(field)[0]


class CubicIdeal:
    """Z-module in the power basis, rows of an HNF basis."""

    __slots__ = ("field", "basis")

    def __init__(self, field: CyclicCubicField, generators: Iterable[Sequence[int]]):
        self.field = field
        self.basis = row_hnf([list(v) for v in generators])
        if len(self.basis) != 3:
            raise ValueError("ideal basis does not have full rank")

    @classmethod
    def principal(cls, x: AlgebraicNumber) -> "CubicIdeal":
        if x.denominator() != 1:
            raise ValueError("generator must lie in Z[alpha]")
        gens = []
        y = x
        for _ in range(3):
            gens.append([int(c) for c in y.coords])
            y = y * x.field.alpha
        return cls(x.field, gens)

    @classmethod
    def scalar(cls, field: CyclicCubicField, n: int) -> "CubicIdeal":
        return cls(field, [[n, 0, 0], [0, n, 0], [0, 0, n]])

    @property
    def norm(self) -> int:
        return abs(det_int(self.basis))

    def elements(self) -> List[AlgebraicNumber]:
        return [self.field.element(v) for v in self.basis]

    def __mul__(self, other: "CubicIdeal") -> "CubicIdeal":
        gens = []
        for x in self.elements():
            for y in other.elements():
                gens.append([int(c) for c in (x * y).coords])
        return CubicIdeal(self.field, gens)

    def __pow__(self, k: int) -> "CubicIdeal":
        result = CubicIdeal.scalar(self.field, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicIdeal) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"CubicIdeal(norm={self.norm}, basis={self.basis})"


def factor_ramified_prime(field: CyclicCubicField, ell: int) -> CubicIdeal:
    if field.conductor % ell:
        raise ValueError(f"{ell} does not divide the conductor {field.conductor}")
    if field.index % ell == 0:
        raise IndexDivisor(f"{ell} divides the index of Z[alpha] in {field}")
    f = field.poly
    if ell == 3:
        r = next(x for x in range(3) if f(x) % 3 == 0)
    else:
        r = (-f[2] * pow(3, -1, ell)) % ell
    cube = IntPolynomial((-r ** 3, 3 * r * r, -3 * r, 1))
    if any((u - v) % ell for u, v in zip(f.coeffs, cube.coeffs)):
        raise ArithmeticError(f"{format_poly(f.coeffs)} is not a cube mod {ell}")
    ideal = CubicIdeal(field, [[ell, 0, 0], [-r, 1, 0], [-r * r, 0, 1]])
    if ideal ** 3 != CubicIdeal.scalar(field, ell):
        raise ArithmeticError(f"ideal above {ell} does not cube to {ell}")
    return ideal


def fields_from_conductor(m: int) -> List[CyclicCubicField]:
    validate_cubic_conductor(m)
    return [CyclicCubicField.from_rep(m, a, b) for a, b in cornacchia_27(m)]


def family_field(a: int) -> CyclicCubicField:
    """Field of the (a, b = 1) family, m = (a² + 27)/4, with the sign of a normalized."""
    if a % 2 == 0:
        raise NotInFamily(f"a = {a} must be odd")
    m = (a * a + 27) // 4
    if not is_cubic_conductor(m):
        raise NotInFamily(f"m = {m} is not a cyclic cubic conductor")
    if a % 3 == 2 or (a % 3 == 0 and a < 0):
        a = -a
    return CyclicCubicField.from_rep(m, a, 1)
