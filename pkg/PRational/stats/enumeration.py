"""Streams of abelian fields ordered by conductor or by generators."""

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterator, List, Tuple

from sympy import factorint

from PRational.arith.ntheory import (
    conductor_primes,
    is_cubic_conductor,
    is_squarefree,
    squarefree_kernel,
    squarefree_range,
)
from PRational.fields.cubic import CubicCharacter, CyclicCubicField, fields_from_conductor
from PRational.utils.exceptions import DependentGenerators

CharacterKey = Tuple[Tuple[int, int], ...]


def _is_quadratic_conductor(c: int) -> bool:
    """|D| for a fundamental discriminant D: odd squarefree, 4 or 8 times an odd squarefree."""
    if c < 3:
        return False
    if c % 2:
        return is_squarefree(c)
    if c % 8 == 4:
        return is_squarefree(c // 4)
    if c % 16 == 8:
        return is_squarefree(c // 8)
    return False


@dataclass
class ConductorStream:
    """Conductors of cyclic degree-q fields up to bound, resumable from cursor."""

    q: int
    bound: int
    t: int = 1
    cursor: int = 0

    def __post_init__(self):
        if self.q not in (2, 3):
            raise ValueError(f"q = {self.q} is not supported")

    def accepts(self, c: int) -> bool:
        if self.q == 3:
            return is_cubic_conductor(c) and len(conductor_primes(c)) >= self.t
        return _is_quadratic_conductor(c)

    def __iter__(self) -> Iterator[int]:
        c = max(self.cursor + 1, 3)
        while c <= self.bound:
            if self.accepts(c):
                self.cursor = c
                yield c
            c += 1
        self.cursor = self.bound


def enumerate_cubic(X: int, start: int = 0) -> Iterator[CyclicCubicField]:
    if X < 7:
        raise ValueError(f"bound {X} is below the smallest cubic conductor 7")
    for m in ConductorStream(3, X, cursor=start):
        yield from fields_from_conductor(m)


def _prime_masks(bound: int) -> Dict[int, int]:
    """Squarefree d in [2, bound] mapped to the bitmask of its prime divisors."""
    primes: Dict[int, int] = {}
    masks = {}
    for d in squarefree_range(2, bound):
        mask = 0
        for ell in factorint(d):
            mask |= 1 << primes.setdefault(ell, len(primes))
        masks[d] = mask
    return masks


def _span(masks: Tuple[int, ...]) -> FrozenSet[int]:
    span = {0}
    for v in masks:
        span |= {s ^ v for s in span}
    span.discard(0)
    return frozenset(span)


def enumerate_multiquadratic(t: int, d_bound: int) -> Iterator[Tuple[int, ...]]:
    """Increasing t-tuples of squarefree 2 ≤ d ≤ d_bound, one per generated field."""
    if t < 1:
        raise ValueError("t must be positive")
    masks = _prime_masks(d_bound)
    ds = sorted(masks)
    seen = set()
    for combo in combinations(ds, t):
        span = _span(tuple(masks[d] for d in combo))
        if len(span) != 2 ** t - 1 or span in seen:
            continue
        seen.add(span)
        yield combo


def multiquadratic_subfields(ds: Tuple[int, ...]) -> List[int]:
    """Squarefree kernels of every nonempty subset product, sorted by size."""
    out = set()
    for r in range(1, len(ds) + 1):
        for subset in combinations(ds, r):
            prod = 1
            for d in subset:
                prod *= d
            out.add(squarefree_kernel(prod))
    if len(out) != 2 ** len(ds) - 1 or 1 in out:
        raise DependentGenerators(f"{ds} are multiplicatively dependent modulo squares")
    return sorted(out, key=lambda d: (abs(d), d))


def character_key(chi: CubicCharacter) -> CharacterKey:
    """Component/exponent pairs, normalized so the first exponent is 1."""
    pairs = [(q, e % 3) for q, e in zip(chi.components, chi.exponents) if e % 3]
    return normalize_key(dict(pairs))


def normalize_key(exps: Dict[int, int]) -> CharacterKey:
    items = sorted((q, e % 3) for q, e in exps.items() if e % 3)
    if items and items[0][1] == 2:
        items = [(q, 2 * e % 3) for q, e in items]
    return tuple(items)


def combine(k1: CharacterKey, k2: CharacterKey, j: int = 1) -> CharacterKey:
    exps = dict(k1)
    for q, e in k2:
        exps[q] = exps.get(q, 0) + j * e
    return normalize_key(exps)


def key_conductor(key: CharacterKey) -> int:
    c = 1
    for q, _ in key:
        c *= q
    return c


def cubic_subfield_keys(k1: CharacterKey, k2: CharacterKey) -> Tuple[CharacterKey, ...]:
    """The four cubic subfields of the compositum, as character classes."""
    keys = (k1, k2, combine(k1, k2, 1), combine(k1, k2, 2))
    if () in keys or len(set(keys)) != 4:
        raise DependentGenerators(f"{k1} and {k2} generate a cyclic group")
    return keys


def enumerate_cubic_pairs(X: int) -> Iterator[Tuple[CyclicCubicField, ...]]:
    """(Z/3)² fields of conductor ≤ X, each as its four cubic subfields."""
    by_key: Dict[CharacterKey, CyclicCubicField] = {}
    for field in enumerate_cubic(X):
        by_key[character_key(field.character)] = field
    keys = sorted(by_key, key=lambda k: (key_conductor(k), k))
    seen = set()
    for i, k1 in enumerate(keys):
        c1 = key_conductor(k1)
        for k2 in keys[i + 1:]:
            c2 = key_conductor(k2)
            if c1 * c2 // gcd(c1, c2) > X:
                continue
            try:
                subkeys = cubic_subfield_keys(k1, k2)
            except DependentGenerators:
                continue
            group = frozenset(subkeys)
            if group in seen:
                continue
            seen.add(group)
            yield tuple(by_key[k] for k in sorted(subkeys, key=lambda k: (key_conductor(k), k)))
