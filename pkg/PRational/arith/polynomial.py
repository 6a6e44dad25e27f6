"""Dense polynomials over Z and over residue rings (Z/N)[x]/<f>."""

from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_factor_sqf,
    gf_gcd,
    gf_gcdex,
    gf_from_int_poly,
    gf_sqf_p,
)

from PRational.utils.exceptions import PRationalError


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        return IntPolynomial(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod_monic(self, g: "IntPolynomial") -> Tuple["IntPolynomial", "IntPolynomial"]:
        """Division by a monic divisor, exact over Z."""
        if not g.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dg = g.degree
        quo = [0] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c:
                quo[i - dg] = c
                for j, gc in enumerate(g.coeffs):
                    rem[i - dg + j] -= c * gc
        return IntPolynomial(quo), IntPolynomial(rem[:dg])

    def reduce(self, N: int) -> Tuple[int, ...]:
        return tuple(c % N for c in self.coeffs)

    def to_gf(self, q: int) -> List[int]:
        """Dense list over F_q, highest degree first."""
        return gf_from_int_poly(list(reversed(self.coeffs)), q)

    def discriminant(self) -> int:
        from sympy import Poly, discriminant, symbols

        x = symbols("x")
        return int(discriminant(Poly(list(reversed(self.coeffs)), x)))

    def __repr__(self) -> str:
        return f"IntPolynomial({format_poly(self.coeffs)})"


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = (f"{mag}*" if mag != 1 else "") + (var if i == 1 else f"{var}^{i}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> IntPolynomial:
    if m < 1:
        raise ValueError(f"cyclotomic index must be positive, got {m}")
    num = IntPolynomial([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num, rem = num.divmod_monic(cyclotomic_poly(d))
            if not rem.is_zero():
                raise ArithmeticError(f"Φ_{d} does not divide x^{m} - 1")
    return num


class ResidueRing:
    """(Z/N)[x]/<f> for monic f."""

    __slots__ = ("N", "f", "_tail")

    def __init__(self, N: int, f: IntPolynomial):
        if N < 1:
            raise ValueError("modulus must be positive")
        if not f.is_monic() or f.degree < 1:
            raise ValueError("modulus polynomial must be monic of positive degree")
        self.N = N
        self.f = f
        # x^n ≡ -(f_0 + ... + f_{n-1} x^{n-1})
        self._tail = tuple((-c) % N for c in f.coeffs[:-1])

    @property
    def degree(self) -> int:
        return self.f.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidueRing) and (self.N, self.f) == (other.N, other.f)

    def __hash__(self) -> int:
        return hash((self.N, self.f))

    def reduce(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        N, n = self.N, self.degree
        buf = [c % N for c in coeffs]
        for i in range(len(buf) - 1, n - 1, -1):
            c = buf[i]
            if c:
                base = i - n
                for j, t in enumerate(self._tail):
                    if t:
                        buf[base + j] = (buf[base + j] + c * t) % N
            buf[i] = 0
        buf = buf[:n] + [0] * (n - len(buf))
        return tuple(buf)

    def __call__(self, value) -> "ResiduePolyElement":
        if isinstance(value, int):
            value = (value,)
        elif isinstance(value, IntPolynomial):
            value = value.coeffs
        return ResiduePolyElement(self, self.reduce(value))

    def one(self) -> "ResiduePolyElement":
        return self(1)

    def gen(self) -> "ResiduePolyElement":
        return self((0, 1))


class ResiduePolyElement:
    __slots__ = ("ring", "value")

    def __init__(self, ring: ResidueRing, value: Tuple[int, ...]):
        self.ring = ring
        self.value = value

    def _coerce(self, other) -> "ResiduePolyElement":
        if isinstance(other, ResiduePolyElement):
            if other.ring != self.ring:
                raise PRationalError("elements live in different residue rings")
            return other
        return self.ring(other)

    def __add__(self, other) -> "ResiduePolyElement":
        other = self._coerce(other)
        N = self.ring.N
        return ResiduePolyElement(
            self.ring, tuple((a + b) % N for a, b in zip(self.value, other.value))
        )

    __radd__ = __add__

    def __neg__(self) -> "ResiduePolyElement":
        N = self.ring.N
        return ResiduePolyElement(self.ring, tuple((-a) % N for a in self.value))

    def __sub__(self, other) -> "ResiduePolyElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ResiduePolyElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ResiduePolyElement":
        other = self._coerce(other)
        return ResiduePolyElement(
            self.ring, self.ring.reduce(poly_mul(self.value, other.value))
        )

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> "ResiduePolyElement":
        return polmod_pow(self, exp)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring(other)
        return (
            isinstance(other, ResiduePolyElement)
            and self.ring == other.ring
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    def is_zero(self) -> bool:
        return not any(self.value)

    def is_one(self) -> bool:
        return self.value[0] == 1 % self.ring.N and not any(self.value[1:])

    def lift(self) -> IntPolynomial:
        return IntPolynomial(self.value)

    def __repr__(self) -> str:
        return f"[{format_poly(self.value)} mod ({self.ring.N}, {format_poly(self.ring.f.coeffs)})]"


def polmod_pow(base: ResiduePolyElement, exp: int) -> ResiduePolyElement:
    if exp < 0:
        raise ValueError("negative exponent")
    result = base.ring.one()
    square = base
    while exp:
        if exp & 1:
            result = result * square
        exp >>= 1
        if exp:
            square = square * square
    return result


def is_irreducible_mod(f: IntPolynomial, q: int) -> bool:
    """Distinct-degree test: x^(q^n) ≡ x and gcd(x^(q^(n/l)) - x, f) = 1."""
    from sympy import factorint

    fq = IntPolynomial(f.reduce(q))
    n = fq.degree
    if n < 1:
        raise ValueError(f"polynomial vanishes or is constant mod {q}")
    if n == 1:
        return True
    lc_inv = pow(fq.lc, -1, q)
    monic = IntPolynomial(c * lc_inv % q for c in fq.coeffs)
    ring = ResidueRing(q, monic)
    x = ring.gen()
    frob = {0: x}

    def frobenius(k: int) -> ResiduePolyElement:
        if k not in frob:
            frob[k] = polmod_pow(x, q ** k)
        return frob[k]

    if not (frobenius(n) - x).is_zero():
        return False
    for ell in factorint(n):
        h = (frobenius(n // ell) - x).lift()
        g = gf_gcd(h.to_gf(q), monic.to_gf(q), q, ZZ)
        if len(g) > 1:
            return False
    return True


def factor_degrees_mod(f: IntPolynomial, q: int) -> List[int]:
    """Degrees of the irreducible factors of a squarefree f mod q."""
    gf = f.to_gf(q)
    if not gf_sqf_p(gf, q, ZZ):
        raise ValueError(f"polynomial is not squarefree mod {q}")
    lc_inv = pow(int(gf[0]), -1, q)
    monic = [int(c) * lc_inv % q for c in gf]
    return [d for factor, d in gf_ddf_zassenhaus(monic, q, ZZ)
            for _ in range((len(factor) - 1) // d)]


def roots_mod(f: IntPolynomial, q: int) -> List[int]:
    """Roots of a squarefree-mod-q polynomial in F_q."""
    _, factors = gf_factor_sqf(f.to_gf(q), q, ZZ)
    roots = []
    for g in factors:
        if len(g) == 2:
            roots.append(int(-g[1] * pow(int(g[0]), -1, q)) % q)
    return sorted(roots)


def gf_inverse(value: Sequence[int], modulus: IntPolynomial, q: int) -> Tuple[int, ...]:
    """Inverse of value in F_q[x]/<modulus>, low-first coefficients."""
    s, _, h = gf_gcdex(
        gf_from_int_poly(list(reversed(value)), q), modulus.to_gf(q), q, ZZ
    )
    if len(h) != 1:
        raise ZeroDivisionError("element is not invertible modulo the defining polynomial")
    inv_h = pow(int(h[0]), -1, q)
    return tuple(int(c) * inv_h % q for c in reversed(s))


def hensel_root(f: IntPolynomial, r: int, q: int, k: int) -> int:
    """Lift a simple root r of f mod q to a root mod q^k by Newton steps."""
    df = f.derivative()
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        N = q ** prec
        r = (r - f(r) * pow(df(r) % N, -1, N)) % N
    return r % q ** k


def interpolate_mod(xs: Sequence[int], ys: Sequence[int], N: int) -> List[int]:
    """Coefficients, low first, of the polynomial of degree < len(xs) through (xs, ys) mod N."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        basis = [1]
        denom = 1
        for j in range(n):
            if j != i:
                basis = poly_mul(basis, [-xs[j], 1])
                denom = denom * (xs[i] - xs[j]) % N
        scale = ys[i] * pow(denom, -1, N) % N
        for t, c in enumerate(basis):
            out[t] = (out[t] + scale * c) % N
    return out
