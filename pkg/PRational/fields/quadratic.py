"""Quadratic fields: units mod p², form class numbers and the rationality criteria."""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, List, Set, Tuple

from sympy import isprime, legendre_symbol
from sympy.ntheory import sqrt_mod

from PRational.arith.ntheory import is_squarefree
from PRational.logging import LOGGER
from PRational.utils.exceptions import RamifiedPrime
from PRational.utils.verdict import Tri

Form = Tuple[int, int, int]


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise ValueError(f"{self.d} is not a squarefree integer different from 0 and 1")

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def polynomial(self) -> Tuple[int, int, int]:
        """Low-first coefficients of the minimal polynomial of the integral generator."""
        if self.d % 4 == 1:
            return (-(self.d - 1) // 4, -1, 1)
        return (-self.d, 0, 1)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class UnitResidue:
    """u + v√d ≡ ε (mod p²); half records that ε itself is not in Z[√d]."""

    d: int
    p: int
    u: int
    v: int
    norm_sign: int
    half: bool = False
    period: int = 0

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def power(self, k: int) -> "UnitResidue":
        M = self.modulus
        ru, rv = 1, 0
        bu, bv = self.u, self.v
        e = k
        while e:
            if e & 1:
                ru, rv = (ru * bu + self.d * rv * bv) % M, (ru * bv + rv * bu) % M
            e >>= 1
            if e:
                bu, bv = (bu * bu + self.d * bv * bv) % M, (2 * bu * bv) % M
        return UnitResidue(self.d, self.p, ru, rv, self.norm_sign ** k)

    def norm_residue(self) -> int:
        return (self.u * self.u - self.d * self.v * self.v) % self.modulus


def _reduced_start(d: int) -> Tuple[int, int]:
    """(P0, Q0) of a reduced quadratic irrational (P0 + √d)/Q0 generating the maximal order."""
    s = isqrt(d)
    if d % 4 == 1:
        b = s if s % 2 else s - 1
        return b, 2
    return s, 1


def fundamental_unit_mod(field: QuadraticField, p: int) -> UnitResidue:
    if not field.is_real:
        raise ValueError("fundamental units are only tracked for real quadratic fields")
    if p % 2 == 0:
        raise ValueError("p must be odd")
    d = field.d
    s = isqrt(d)
    P0, Q0 = _reduced_start(d)
    M = 2 * p * p
    q_prev2, q_prev1 = 1, 0
    P, Q = P0, Q0
    length = 0
    while True:
        a = (P + s) // Q
        q_prev2, q_prev1 = q_prev1, (a * q_prev1 + q_prev2) % M
        P = a * Q - P
        Q = (d - P * P) // Q
        length += 1
        if P == P0 and Q == Q0:
            break
    # ε = q_{l-1} θ0 + q_{l-2}, θ0 = (P0 + √d) / Q0
    mod = p * p
    inv_q0 = pow(Q0, -1, mod)
    u = (q_prev1 * P0 * inv_q0 + q_prev2) % mod
    v = (q_prev1 * inv_q0) % mod
    half = Q0 == 2 and q_prev1 % 2 == 1
    unit = UnitResidue(d, p, u, v, (-1) ** length, half, length)
    if unit.norm_residue() != unit.norm_sign % mod:
        raise ArithmeticError(f"unit residue for d={d} fails its norm relation")
    return unit


def _roots_mod_2a(D: int, a: int) -> List[int]:
    """Residues b mod 2a with b² ≡ D (mod 4a)."""
    modulus = 4 * a
    roots = sqrt_mod(D % modulus, modulus, all_roots=True) or []
    return sorted({r % (2 * a) for r in roots})


def reduced_forms_imaginary(D: int) -> Iterator[Form]:
    bound = isqrt(-D // 3)
    for a in range(1, bound + 1):
        for t in _roots_mod_2a(D, a):
            for b in (t, t - 2 * a):
                if abs(b) > a:
                    continue
                num = b * b - D
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a:
                    continue
                if b < 0 and (-b == a or a == c):
                    continue
                if gcd(gcd(a, abs(b)), c) != 1:
                    continue
                yield a, b, c


def class_number_imaginary(d: int) -> int:
    if d >= 0:
        raise ValueError("imaginary class numbers need d < 0")
    D = QuadraticField(d).discriminant
    return sum(1 for _ in reduced_forms_imaginary(D))


def reduced_forms_real(D: int) -> Set[Form]:
    s = isqrt(D)
    forms = set()
    for a in range(1, s + 1):
        lo = max(1, s - 2 * a + 1, 2 * a - s)
        for t in _roots_mod_2a(D, a):
            b = t + ((lo - t) + 2 * a - 1) // (2 * a) * (2 * a) if t < lo else t
            while b <= s:
                c = (b * b - D) // (4 * a)
                if gcd(gcd(a, b), abs(c)) == 1:
                    forms.add((a, b, c))
                    forms.add((-a, b, -c))
                b += 2 * a
    return forms


def rho(form: Form, s: int, D: int) -> Form:
    _, b, c = form
    two_c = 2 * abs(c)
    b2 = s - ((s + b) % two_c)
    return c, b2, (b2 * b2 - D) // (4 * c)


def narrow_class_number(D: int) -> int:
    s = isqrt(D)
    remaining = reduced_forms_real(D)
    cycles = 0
    while remaining:
        start = remaining.pop()
        cycles += 1
        form = rho(start, s, D)
        while form != start:
            remaining.discard(form)
            form = rho(form, s, D)
    return cycles


def class_number_real(d: int) -> int:
    if d <= 0:
        raise ValueError("real class numbers need d > 0")
    field = QuadraticField(d)
    h_plus = narrow_class_number(field.discriminant)
    # any odd prime works for the sign; 3 is always odd
    sign = fundamental_unit_mod(field, 3).norm_sign
    return h_plus if sign == -1 else h_plus // 2


def class_number(d: int) -> int:
    return class_number_real(d) if d > 0 else class_number_imaginary(d)


def unit_exponent(field: QuadraticField, p: int) -> int:
    """E = p^e - 1 with e the residue degree of p."""
    if field.discriminant % p == 0:
        raise RamifiedPrime(f"{p} ramifies in {field}")
    e = 1 if legendre_symbol(field.d % p, p) == 1 else 2
    return p ** e - 1


def unit_log_mod_p(unit: UnitResidue, E: int) -> Tuple[int, int]:
    """((ε^E - 1)/p mod p) in the (1, √d) basis."""
    p = unit.p
    power = unit.power(E)
    u, v = (power.u - 1) % unit.modulus, power.v
    if u % p or v % p:
        raise ArithmeticError("ε^E is not 1 modulo p, exponent too small")
    return (u // p) % p, (v // p) % p


def has_p_primary_unit(field: QuadraticField, p: int) -> bool:
    if not field.is_real:
        raise ValueError("p-primary units are tested on real quadratic fields")
    E = unit_exponent(field, p)
    return unit_log_mod_p(fundamental_unit_mod(field, p), E) == (0, 0)


def is_p_rational_quadratic(field: QuadraticField, p: int) -> Tri:
    if p % 2 == 0 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    D = field.discriminant
    if not field.is_real:
        if p == 3 and D % 3 == 0:
            return Tri.unknown("ramified", d=field.d, p=p)
        h = class_number_imaginary(field.d)
        if h % p:
            return Tri.yes("imaginary-class-number", d=field.d, p=p, h=h)
        return Tri.unknown("p-divides-h", d=field.d, p=p, h=h)
    if D % p == 0:
        return Tri.unknown("ramified", d=field.d, p=p)
    if has_p_primary_unit(field, p):
        return Tri.no("p-primary-unit", d=field.d, p=p)
    h = class_number_real(field.d)
    if h % p:
        return Tri.yes("class-number-and-units", d=field.d, p=p, h=h)
    LOGGER(__name__).debug(f"{field}: {p} divides h = {h}")
    return Tri.unknown("p-divides-h", d=field.d, p=p, h=h)


def pell_exception_primes(bound: int) -> Set[int]:
    """Primes of the form a²/2 ± 1 with a even, up to bound."""
    out = set()
    a = 2
    while a * a // 2 - 1 <= bound:
        for cand in (a * a // 2 - 1, a * a // 2 + 1):
            if cand <= bound and isprime(cand):
                out.add(cand)
        a += 2
    return out
