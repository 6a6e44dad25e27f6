"""Certificates that p does not divide the class number of a cyclic cubic field.

The class number equals the index of Leopoldt's cyclotomic units, so it is
enough to show that no cyclotomic unit becomes a p-th power in the full unit
group. Residues at split primes q ≡ 1 mod p detect p-th powers.
"""

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime, primitive_root

import config
from PRational.arith.finitefield import discrete_log_table, finite_field_with_root_of_unity
from PRational.arith.linalg import MatrixModP, rank_mod_p
from PRational.arith.ntheory import euler_phi, mult_order, primes_congruent_one
from PRational.arith.polynomial import ResidueRing, cyclotomic_poly, roots_mod
from PRational.fields.cubic import CyclicCubicField
from PRational.logging import LOGGER
from PRational.utils.exceptions import BadPrime, FieldConstructionError
from PRational.utils.verdict import Tri

NOT_DIVISIBLE = "not-divisible"
INCONCLUSIVE = "inconclusive"

CANONICAL = "canonical"
ROOTS = "roots"


@dataclass(frozen=True)
class CyclotomicUnitSpec:
    """N((ζ_m^R - 1)/(ζ_m - 1)) down to the cubic field."""

    conductor: int
    R: int

    def __post_init__(self):
        if gcd(self.R, self.conductor) != 1:
            raise ValueError(f"R = {self.R} is not prime to {self.conductor}")


@dataclass
class ClassCertificate:
    conductor: int
    p: int
    verdict: str
    trials: int
    mode: str = CANONICAL
    primes: Tuple[int, ...] = ()
    # per prime q, the discrete logs in μ_p of the three coset quotients
    columns: Dict[int, Tuple[int, int, int]] = dc_field(default_factory=dict)
    rank: int = 0

    @property
    def not_divisible(self) -> bool:
        return self.verdict == NOT_DIVISIBLE

    def to_tri(self) -> Tri:
        if self.not_divisible:
            return Tri.yes("gras-van-der-linden", conductor=self.conductor, p=self.p,
                           primes=list(self.primes))
        return Tri.unknown("class-test-inconclusive", conductor=self.conductor,
                           p=self.p, trials=self.trials)

    def as_dict(self) -> dict:
        return {
            "conductor": self.conductor,
            "p": self.p,
            "verdict": self.verdict,
            "trials": self.trials,
            "mode": self.mode,
            "primes": list(self.primes),
            "rank": self.rank,
        }


def unit_specs(cubic: CyclicCubicField) -> List[CyclotomicUnitSpec]:
    """R = g and g² for a g generating the Galois group of the cubic field."""
    g = cubic.character.generator_outside_kernel()
    return [CyclotomicUnitSpec(cubic.conductor, g),
            CyclotomicUnitSpec(cubic.conductor, g * g % cubic.conductor)]


def residue_norm_power(spec: CyclotomicUnitSpec, n: int, p: int, q: int, seed: Optional[int] = None):
    """γ̄^(φ(m)/(nf) · (q^f-1)²/(p(q-1))) for γ = (ζ^R - 1)/(ζ - 1) in F_{q^f}."""
    m = spec.conductor
    if gcd(q, m * p) != 1:
        raise BadPrime(f"q = {q} divides m*p = {m * p}")
    f = mult_order(q, m)
    phi = euler_phi(m)
    if (q ** f - 1) % p:
        raise BadPrime(f"{p} does not divide {q}^{f} - 1")
    if phi % (n * f):
        raise BadPrime(f"n*f = {n * f} does not divide phi({m}) = {phi}")
    field, zeta = finite_field_with_root_of_unity(q, m, seed=config.SEED if seed is None else seed)
    gamma = field.divide(zeta ** spec.R - 1, zeta - 1)
    exponent = phi // (n * f) * ((q ** f - 1) ** 2 // (p * (q - 1)))
    return gamma ** exponent


def admissible_primes(cubic: CyclicCubicField, p: int, max_degree: int = None):
    """Primes q ≡ 1 mod p splitting in the field with ord_m(q) small, increasing."""
    m = cubic.conductor
    max_degree = config.CLASS_MAX_RESIDUE_DEGREE if max_degree is None else max_degree
    chi = cubic.character
    for q in primes_congruent_one(p):
        if m % q == 0 or chi(q) != 0:
            continue
        if mult_order(q, m) <= max_degree:
            yield q


def coset_logs(cubic: CyclicCubicField, p: int, q: int) -> Tuple[int, int, int]:
    """Discrete logs in μ_p of the residues of N(ζ^c - 1) for c in each coset of the kernel.

    The three values x_j satisfy: the residue of σ^j(η_g) has log x_{j+1} - x_j.
    """
    m = cubic.conductor
    chi = cubic.character
    field, zeta = finite_field_with_root_of_unity(q, m, seed=config.SEED + q)
    products = [field.one(), field.one(), field.one()]
    power = field.one()
    for x in range(1, m):
        power = power * zeta
        j = chi(x)
        if j >= 0:
            products[j] = products[j] * (power - 1)
    cofactor = (q - 1) // p
    mu_gen = field(pow(primitive_root(q), cofactor, q))
    table = discrete_log_table(field, mu_gen, p)
    logs = []
    for P in products:
        if any(P.value[1:]):
            raise ArithmeticError(f"norm residue at q = {q} escaped F_q")
        logs.append(table[(P ** cofactor).value])
    return tuple(logs)


def _unit_columns(x: Sequence[int], p: int) -> List[Tuple[int, int]]:
    """Columns (log σ^i η, log σ^(i+1) η) over the three conjugate primes."""
    d = [(x[(j + 1) % 3] - x[j]) % p for j in range(3)]
    return [(d[i], d[(i + 1) % 3]) for i in range(3)]


def _rank(columns: Dict[int, Tuple[int, int, int]], p: int) -> int:
    cols = [c for x in columns.values() for c in _unit_columns(x, p)]
    if not cols:
        return 0
    rows = [[c[0] for c in cols], [c[1] for c in cols]]
    return rank_mod_p(MatrixModP(p, rows))


def gras_vdl(cubic: CyclicCubicField, p: int, N: int = None, mode: str = CANONICAL) -> ClassCertificate:
    N = config.CLASS_TRIALS if N is None else N
    if p in (2, 3) or not isprime(p):
        raise ValueError(f"p = {p} must be a prime greater than 3")
    m = cubic.conductor
    # q ≡ 1 mod p never equals p, so p may divide m
    if mode == ROOTS:
        return _gras_vdl_roots(cubic, p, N)
    if mode != CANONICAL:
        raise ValueError(f"unknown class test mode {mode!r}")
    columns: Dict[int, Tuple[int, int, int]] = {}
    trials = 0
    for q in admissible_primes(cubic, p):
        if trials >= N:
            break
        trials += 1
        try:
            columns[q] = coset_logs(cubic, p, q)
        except FieldConstructionError as err:
            LOGGER(__name__).warning(f"{cubic}: skipping q = {q}: {err}")
            continue
        rank = _rank(columns, p)
        if rank == 2:
            used = tuple(columns)
            return ClassCertificate(m, p, NOT_DIVISIBLE, trials, mode, used, columns, rank)
    return ClassCertificate(m, p, INCONCLUSIVE, trials, mode, tuple(columns), columns,
                            _rank(columns, p))


def _gras_vdl_roots(cubic: CyclicCubicField, p: int, N: int) -> ClassCertificate:
    """Evaluates (r^R - 1)/(r - 1) at roots r of the defining cubic modulo q."""
    m = cubic.conductor
    specs = unit_specs(cubic)
    trials = 0
    for q in primes_congruent_one(p):
        if trials >= N:
            break
        if m % q == 0 or cubic.index % q == 0 or cubic.discriminant % q == 0:
            continue
        roots = roots_mod(cubic.poly, q)
        if len(roots) != 3:
            continue
        trials += 1
        for r in roots:
            if r in (0, 1):
                continue
            for spec in specs:
                value = (pow(r, spec.R, q) - 1) * pow(r - 1, -1, q) % q
                if value and pow(value, (q - 1) // p, q) != 1:
                    return ClassCertificate(m, p, NOT_DIVISIBLE, trials, ROOTS, (q,))
    return ClassCertificate(m, p, INCONCLUSIVE, trials, ROOTS)


def verify_certificate(cubic: CyclicCubicField, cert: ClassCertificate) -> bool:
    """Recompute the residues of a canonical certificate and its rank."""
    if cert.mode != CANONICAL or not cert.not_divisible:
        return False
    columns = {q: coset_logs(cubic, cert.p, q) for q in cert.primes}
    return columns == cert.columns and _rank(columns, cert.p) == 2


def family_residue_check(m: int, full: bool = False) -> bool:
    """Φ_m irreducible mod 11 with 3 | φ(m) and 11 ∤ φ(m), and (x+1)^(2φ/3) ≠ ±1 there.

    The coefficient of x in (x+1)^k is k when k < φ(m); ``full`` runs the whole
    power in F_11[x]/<Φ_m> instead.
    """
    if not isprime(m):
        raise ValueError(f"{m} is not prime")
    phi = m - 1
    if phi % 3 or phi % 11 == 0 or m == 11:
        return False
    if mult_order(11, m) != phi:
        return False
    k = 2 * phi // 3
    if not full:
        return k % 11 != 0
    ring = ResidueRing(11, cyclotomic_poly(m))
    value = (ring.gen() + 1) ** k
    return not (value.is_one() or (-value).is_one())
