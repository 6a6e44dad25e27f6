"""Composita of quadratic or cyclic cubic fields: p-rational exactly when every cyclic subfield is."""

import asyncio
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple, Union

from PRational.fields.cubic import CyclicCubicField, fields_from_conductor
from PRational.fields.quadratic import QuadraticField
from PRational.logging import LOGGER
from PRational.prationality.strategy import certify, field_polynomial
from PRational.stats.enumeration import (
    CharacterKey,
    normalize_key,
    character_key,
    key_conductor,
    multiquadratic_subfields,
)
from PRational.utils.exceptions import DegreeDivisibleByP, DependentGenerators
from PRational.utils.verdict import Tri

Subfield = Union[QuadraticField, CyclicCubicField]


@dataclass(frozen=True)
class CompositumSpec:
    """q = 2: squarefree integers d_i. q = 3: cyclic cubic fields."""

    q: int
    generators: Tuple

    def __post_init__(self):
        if self.q not in (2, 3):
            raise ValueError(f"q must be 2 or 3, got {self.q}")
        if not self.generators:
            raise ValueError("at least one generator is required")

    @property
    def t(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> int:
        return self.q ** self.t

    def __str__(self) -> str:
        if self.q == 2:
            return "Q(" + ", ".join(f"sqrt({d})" for d in self.generators) + ")"
        return " * ".join(g.label for g in self.generators)


def field_from_key(key: CharacterKey) -> CyclicCubicField:
    """The cubic field cut out by a character class."""
    for field in fields_from_conductor(key_conductor(key)):
        if character_key(field.character) == key:
            return field
    raise LookupError(f"no cyclic cubic field carries the character {key}")


def _cubic_subfield_keys(keys: List[CharacterKey]) -> List[CharacterKey]:
    out = []
    for exps in product(range(3), repeat=len(keys)):
        if not any(exps):
            continue
        total: Dict[int, int] = {}
        for e, key in zip(exps, keys):
            for q, c in key:
                total[q] = total.get(q, 0) + e * c
        out.append(normalize_key(total))
    distinct = set(out)
    if () in distinct or len(distinct) != (3 ** len(keys) - 1) // 2:
        raise DependentGenerators("the cubic characters are dependent")
    return sorted(distinct, key=lambda k: (key_conductor(k), k))


def subfields_of_compositum(spec: CompositumSpec) -> List[Subfield]:
    """The (q^t − 1)/(q − 1) cyclic subfields of degree q."""
    if spec.q == 2:
        return [QuadraticField(d) for d in multiquadratic_subfields(tuple(spec.generators))]
    keys = [character_key(g.character) for g in spec.generators]
    by_key = {k: g for k, g in zip(keys, spec.generators)}
    return [by_key.get(k) or field_from_key(k) for k in _cubic_subfield_keys(keys)]


def is_p_rational_compositum(spec: CompositumSpec, p: int, oracle=None) -> Tri:
    if p % spec.q == 0:
        raise DegreeDivisibleByP(f"p = {p} divides the degree {spec.degree}")
    subfields = subfields_of_compositum(spec)
    undecided = []
    for K in subfields:
        tri, _ = certify(K, p)
        if tri.is_no:
            return Tri.no("subfield-not-p-rational", subfield=str(K), reason=tri.criterion)
        if tri.is_unknown:
            undecided.append((K, tri))
    if undecided and oracle is not None and oracle.available():
        polys = [field_polynomial(K) for K, _ in undecided]
        answers = asyncio.run(oracle.oracle_many(polys, p))
        still = []
        for (K, tri), answer in zip(undecided, answers):
            if isinstance(answer, Exception):
                LOGGER(__name__).warning(f"{K}: oracle failed ({answer})")
                still.append((K, tri))
            elif not answer.p_rational:
                return Tri.no("oracle", subfield=str(K), n=answer.n)
        undecided = still
    if undecided:
        return Tri.unknown(
            "subfields-undecided",
            subfields=[str(K) for K, _ in undecided],
            reasons=[tri.criterion for _, tri in undecided],
        )
    return Tri.yes("all-subfields-p-rational", compositum=str(spec), subfields=len(subfields))
