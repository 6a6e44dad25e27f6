"""Units of cyclic cubic fields: principal generators of ramified ideals and cyclotomic units."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations, product
from math import gcd
from typing import List, Optional, Tuple

import mpmath

import config
from PRational.arith.linalg import IntegerLattice, lll_transform
from PRational.fields.cubic import (
    AlgebraicNumber,
    CubicIdeal,
    CyclicCubicField,
    NotInFamily,
    automorphism,
    embed_explicit_elements,
    factor_ramified_prime,
)
from PRational.logging import LOGGER
from PRational.utils.exceptions import IndexDivisor, NoGeneratorFound

SCALE_BITS = 64


@dataclass
class FastUnit:
    eta: AlgebraicNumber
    omega: AlgebraicNumber
    ideal_label: str
    etas: List[AlgebraicNumber] = dc_field(default_factory=list)


def candidate_ideals(field: CyclicCubicField) -> List[Tuple[str, CubicIdeal]]:
    """Ramified prime ideals, then their products, the all-ones product first."""
    primes = []
    for ell in field.conductor_primes:
        try:
            primes.append((ell, factor_ramified_prime(field, ell)))
        except IndexDivisor:
            LOGGER(__name__).debug(f"{field}: skipping index divisor {ell}")
    out = [(str(ell), ideal) for ell, ideal in primes]
    if len(primes) < 2:
        return out
    exponents = [e for e in product((0, 1, 2), repeat=len(primes))
                 if sum(1 for k in e if k) >= 2]
    exponents.sort(key=lambda e: (e != tuple(1 for _ in primes), e))
    for e in exponents:
        ideal = CubicIdeal.scalar(field, 1)
        for (_, gl), k in zip(primes, e):
            if k:
                ideal = ideal * gl ** k
        label = "*".join(f"{ell}^{k}" for (ell, _), k in zip(primes, e) if k)
        out.append((label, ideal))
    return out


def _box(width: int) -> List[Tuple[int, int, int]]:
    vecs = []
    for c in product(range(-width, width + 1), repeat=3):
        first = next((x for x in c if x), 0)
        if first > 0:
            vecs.append(c)
    vecs.sort(key=lambda c: (sum(abs(x) for x in c), c))
    return vecs


def principal_generator(
    ideal: CubicIdeal, roots: List[mpmath.mpf], box: int
) -> Optional[AlgebraicNumber]:
    """Search a generator among small combinations of an LLL-reduced basis."""
    field = ideal.field
    basis = ideal.elements()
    scale = mpmath.mpf(2) ** SCALE_BITS
    rows = [[int(mpmath.nint(x.embed(r) * scale)) for r in roots] for x in basis]
    try:
        _, T = lll_transform(IntegerLattice(rows))
    except Exception as err:
        LOGGER(__name__).debug(f"lattice reduction failed on {ideal}: {err}")
        return None
    reduced = [sum((basis[j] * T[k][j] for j in range(3)), field.element((0, 0, 0)))
               for k in range(3)]
    target = ideal.norm
    for c in _box(box):
        x = reduced[0] * c[0] + reduced[1] * c[1] + reduced[2] * c[2]
        if abs(x.norm()) == target:
            return x
    return None


def fast_unit(cubic: CyclicCubicField, box: int = None) -> FastUnit:
    box = config.FAST_UNIT_BOX if box is None else box
    sigma = automorphism(cubic)
    roots = cubic.real_roots(dps=60)
    found = []
    for label, ideal in candidate_ideals(cubic):
        if found and "*" in label:
            break
        omega = principal_generator(ideal, roots, box)
        if omega is None:
            continue
        eta = sigma(omega) / omega
        if not eta.is_unit() or eta == 1 or eta == -1:
            raise ArithmeticError(f"sigma(w)/w is not a unit of infinite order in {cubic}")
        found.append((label, omega, eta))
    if not found:
        raise NoGeneratorFound(f"no principal ramified ideal generator found in {cubic}")
    label, omega, eta = found[0]
    return FastUnit(eta, omega, label, [e for _, _, e in found])


def _coset_logs(cubic: CyclicCubicField) -> List[mpmath.mpf]:
    chi = cubic.character
    m = cubic.conductor
    sums = [mpmath.mpf(0)] * 3
    for x in range(1, m):
        if gcd(x, m) == 1:
            sums[chi(x)] += mpmath.log(mpmath.sin(mpmath.pi * x / m))
    return sums


def cyclotomic_unit(cubic: CyclicCubicField) -> AlgebraicNumber:
    """Leopoldt unit prod_h (z^(gh) - 1)/(z^h - 1), recognised from its real conjugates."""
    with mpmath.workdps(30):
        S = _coset_logs(cubic)
        digits = int(max(abs(S[(j + 1) % 3] - S[j]) for j in range(3)) / mpmath.log(10)) + 1
    dps = 3 * digits + 40
    with mpmath.workdps(dps):
        S = _coset_logs(cubic)
        conj = [mpmath.exp(S[(j + 1) % 3] - S[j]) for j in range(3)]
        roots = cubic.real_roots(dps=dps)
        V = mpmath.matrix([[1, r, r * r] for r in roots])
        b = cubic.index
        tol = mpmath.mpf(10) ** (-digits - 10)
        for perm in permutations(range(3)):
            sol = mpmath.lu_solve(V, mpmath.matrix([conj[i] for i in perm]))
            scaled = [sol[i] * b for i in range(3)]
            ints = [int(mpmath.nint(s)) for s in scaled]
            if any(abs(s - n) > tol for s, n in zip(scaled, ints)):
                continue
            u = cubic.element([Fraction(n, b) for n in ints])
            if u != 1 and u.is_unit():
                return u
    raise NoGeneratorFound(f"cyclotomic unit of {cubic} not recognised at {dps} digits")


def find_unit(cubic: CyclicCubicField) -> Tuple[AlgebraicNumber, str]:
    """A unit of infinite order and the route that produced it."""
    try:
        return fast_unit(cubic).eta, "fast-unit"
    except NoGeneratorFound:
        pass
    if cubic.b == 1:
        try:
            return embed_explicit_elements(cubic).eta, "explicit-family"
        except NotInFamily:
            pass
    return cyclotomic_unit(cubic), "cyclotomic"
