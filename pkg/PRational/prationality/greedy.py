"""Greedy construction of p-rational multiquadratic fields."""

import math
from typing import Dict, List, Optional, Tuple

import config
from PRational.arith.ntheory import is_squarefree, squarefree_kernel
from PRational.fields.quadratic import QuadraticField, is_p_rational_quadratic
from PRational.logging import LOGGER
from PRational.prationality.compositum import CompositumSpec, is_p_rational_compositum
from PRational.utils.exceptions import CapExceeded
from PRational.utils.verdict import Tri

# p -> generators found by the greedy search, the last one negative
GREEDY_GENERATORS: Dict[int, Tuple[int, ...]] = {
    5: (2, 3, 11, 47, 97, 4691, -178290313),
    7: (2, 5, 11, 17, 41, 619, -816371),
    41: (2, 3, 5, 11, 13, 17, 19, 241, -1),
    73: (2, 3, 5, 7, 13, 17, 23, 37, 61, -1),
}


class _Memo:
    def __init__(self, p: int):
        self.p = p
        self.cache: Dict[int, bool] = {}
        self.tested = 0

    def __call__(self, d: int) -> bool:
        if d not in self.cache:
            self.tested += 1
            self.cache[d] = is_p_rational_quadratic(QuadraticField(d), self.p).is_yes
        return self.cache[d]


def _new_subfields(d: int, group: List[int]) -> List[int]:
    return [d] + [squarefree_kernel(d * s) for s in group]


def _admissible(d: int, group: List[int], ok: _Memo) -> bool:
    if d in group:
        return False
    # cheapest first: small discriminants before the products
    return all(ok(k) for k in sorted(_new_subfields(d, group), key=abs))


def greedy_search(t: int, p: int, d_cap: Optional[int] = None,
                  final_imaginary: bool = False) -> List[int]:
    """t positive generators, each the smallest keeping every real subfield p-rational.

    With final_imaginary, one more generator d < 0 of smallest |d| such that all the new
    imaginary subfields are p-rational is appended.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    cap = d_cap or config.GREEDY_CAP
    ok = _Memo(p)
    seq: List[int] = []
    group: List[int] = []
    d = 1
    while len(seq) < t:
        d += 1
        if d > cap:
            raise CapExceeded(f"no generator {len(seq) + 1} below {cap} at p={p}", seq)
        if not is_squarefree(d) or not _admissible(d, group, ok):
            continue
        group = group + _new_subfields(d, group)
        seq.append(d)
        LOGGER(__name__).info(f"greedy p={p}: d_{len(seq)} = {d} ({ok.tested} subfields tested)")
    if final_imaginary:
        d = 0
        while True:
            d -= 1
            if -d > cap:
                raise CapExceeded(f"no imaginary generator above -{cap} at p={p}", seq)
            if is_squarefree(d) and _admissible(d, group, ok):
                seq.append(d)
                break
    return seq


def growth_diagnostic(seq: List[int]) -> List[Tuple[int, int, float]]:
    """(i, d_i, 2^-i log2 d_i) for the positive generators, counting d_1 = -1 ahead of them."""
    return [(k + 2, d, math.log2(d) / 2 ** (k + 2)) for k, d in enumerate(seq) if d > 0]


def verify_greedy_generators(p: int, prefix: Optional[int] = None, oracle=None) -> Tri:
    if p not in GREEDY_GENERATORS:
        raise KeyError(f"no recorded generators for p={p}")
    gens = GREEDY_GENERATORS[p][:prefix] if prefix else GREEDY_GENERATORS[p]
    return is_p_rational_compositum(CompositumSpec(2, tuple(gens)), p, oracle)
