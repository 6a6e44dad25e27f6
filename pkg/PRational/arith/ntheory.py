"""Small number-theoretic helpers shared by the field modules."""

from functools import reduce
from math import gcd, isqrt
from typing import Iterator, List, Tuple

from sympy import factorint, isprime
from sympy.ntheory import n_order

from PRational.utils.exceptions import (
    InvalidConductor,
    NoReconstruction,
    NoRepresentation,
    NotCoprime,
)


def mult_order(a: int, n: int) -> int:
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) = {gcd(a, n)}")
    if n == 1:
        return 1
    return int(n_order(a % n, n))


def euler_phi(n: int) -> int:
    result = n
    for p in factorint(n):
        result = result // p * (p - 1)
    return result


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y), values, 1)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(abs(n)).values())


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ValueError("squarefree kernel of zero")
    core = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            core *= p
    return core


def squarefree_range(lo: int, hi: int) -> List[int]:
    """Squarefree integers d ≠ 1 in [lo, hi], a sieve on |d|."""
    top = max(abs(lo), abs(hi))
    flags = [True] * (top + 1)
    k = 2
    while k * k <= top:
        for j in range(k * k, top + 1, k * k):
            flags[j] = False
        k += 1
    return [d for d in range(lo, hi + 1) if d not in (0, 1) and flags[abs(d)]]


def rational_reconstruction(r: int, M: int) -> Tuple[int, int]:
    """Return (n, d) with n/d ≡ r mod M and |n|, d ≤ sqrt(M/2)."""
    if M < 1 or not 0 <= r < M:
        raise NoReconstruction(f"residue {r} out of range for modulus {M}")
    if r == 0:
        return 0, 1
    bound = isqrt(M // 2)
    r0, r1 = M, r
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    n, d = r1, t1
    if d < 0:
        n, d = -n, -d
    if d == 0 or d > bound or gcd(d, M) != 1 or (n - r * d) % M:
        raise NoReconstruction(f"no fraction with bound {bound} matches {r} mod {M}")
    return n, d


def conductor_primes(m: int) -> List[int]:
    return sorted(factorint(m))


def is_cubic_conductor(m: int) -> bool:
    """m = p1...ps or 9 p1...p(s-1) with distinct p_i ≡ 1 mod 3."""
    if m < 7:
        return False
    fac = factorint(m)
    for p, e in fac.items():
        if p == 3:
            if e != 2:
                return False
        elif e != 1 or p % 3 != 1:
            return False
    return True


def cornacchia_27(m: int) -> List[Tuple[int, int]]:
    """Solutions of a² + 27b² = 4m, one per cyclic cubic field of conductor m.

    3 ∤ a is normalized to a ≡ 1 mod 3. When 3 | a the sign is fixed to a > 0
    and b is prime to 3, which drops the scaled solutions belonging to the
    conductor m/9.
    """
    if m < 1:
        raise NoRepresentation(f"{m} is not a positive integer")
    four_m = 4 * m
    solutions = []
    b = 1
    while 27 * b * b <= four_m:
        rest = four_m - 27 * b * b
        a = isqrt(rest)
        if a * a == rest:
            if a % 3:
                solutions.append((a if a % 3 == 1 else -a, b))
            elif a > 0 and b % 3:
                solutions.append((a, b))
        b += 1
    if not solutions:
        raise NoRepresentation(f"{m} has no representation as (a² + 27b²)/4")
    return sorted(solutions, key=lambda s: (s[1], s[0]))


def cubic_conductors(bound: int) -> Iterator[int]:
    """Cyclic cubic conductors up to bound, in increasing order."""
    for m in range(7, bound + 1):
        if is_cubic_conductor(m):
            yield m


def validate_cubic_conductor(m: int) -> None:
    if not is_cubic_conductor(m):
        raise InvalidConductor(
            f"{m} is not a product of distinct primes ≡ 1 mod 3, optionally times 9"
        )


def primes_congruent_one(p: int, start: int = 2) -> Iterator[int]:
    """Primes q ≡ 1 mod p, q ≥ start, increasing."""
    q = start + (1 - start) % p
    if q < 2:
        q += p
    while True:
        if isprime(q):
            yield q
        q += p
