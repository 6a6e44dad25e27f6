"""Fast certificates first, the ray class group oracle for whatever they leave open."""

import asyncio
import json
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from PRational.arith.polynomial import IntPolynomial, format_poly
from PRational.certificates.classtest import gras_vdl
from PRational.certificates.regulator import reg_certificate_cubic
from PRational.core.pool import WorkerPool
from PRational.fields.cubic import CyclicCubicField
from PRational.fields.quadratic import QuadraticField, is_p_rational_quadratic
from PRational.fields.units import find_unit
from PRational.logging import LOGGER
from PRational.misc import cpu_seconds
from PRational.utils.exceptions import (
    BadSupport,
    DegreeDivisibleByP,
    NoGeneratorFound,
    RamifiedPrime,
)
from PRational.utils.verdict import Tri

Field = Union[CyclicCubicField, QuadraticField]


@dataclass
class FieldVerdict:
    poly: str
    p: int
    verdict: Tri
    certificate: dict = field(default_factory=dict)
    oracle_used: bool = False

    def as_dict(self) -> dict:
        return {
            "poly": self.poly,
            "p": self.p,
            "verdict": self.verdict.verdict.value,
            "certificate": {"criterion": self.verdict.criterion, **self.certificate},
            "oracle_used": self.oracle_used,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), default=str)


@dataclass
class StrategySummary:
    total: int = 0
    certified: int = 0
    refuted: int = 0
    oracle_sent: int = 0
    oracle_resolved: int = 0
    unknown: int = 0
    certificate_cpu: float = 0.0
    oracle_wall: float = 0.0

    @property
    def speedup(self) -> float:
        """Fields handled per oracle call: the saving over running the oracle on everything."""
        return self.total / self.oracle_sent if self.oracle_sent else float(self.total)

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "certified": self.certified,
            "refuted": self.refuted,
            "oracle_sent": self.oracle_sent,
            "oracle_resolved": self.oracle_resolved,
            "unknown": self.unknown,
            "speedup": round(self.speedup, 3),
            "certificate_cpu": round(self.certificate_cpu, 2),
            "oracle_wall": round(self.oracle_wall, 2),
        }


def field_polynomial(K: Field) -> IntPolynomial:
    if isinstance(K, QuadraticField):
        return IntPolynomial(K.polynomial())
    return K.poly


def certify_cubic(cubic: CyclicCubicField, p: int, trials: Optional[int] = None) -> Tuple[Tri, dict]:
    """Class number certificate, then the Schirokauer rank of a unit and its conjugate."""
    if p == 3:
        raise DegreeDivisibleByP("p = 3 divides the degree of a cubic field")
    if cubic.conductor % p == 0:
        return Tri.unknown("ramified", conductor=cubic.conductor, p=p), {}
    cls = gras_vdl(cubic, p, trials)
    cert = {"class": cls.as_dict()}
    if not cls.not_divisible:
        return cls.to_tri(), cert
    try:
        unit, source = find_unit(cubic)
    except NoGeneratorFound as err:
        LOGGER(__name__).warning(f"{cubic}: {err}")
        return Tri.unknown("no-unit", conductor=cubic.conductor, p=p), cert
    cert["unit_source"] = source
    try:
        reg = reg_certificate_cubic(cubic, unit, p)
    except (RamifiedPrime, BadSupport) as err:
        return Tri.unknown("index-divisor", conductor=cubic.conductor, p=p, reason=str(err)), cert
    cert["regulator"] = reg.as_dict()
    if reg.not_divisible:
        return Tri.yes("class-and-regulator", conductor=cubic.conductor, p=p), cert
    return reg.to_tri(), cert


def certify_quadratic(K: QuadraticField, p: int) -> Tuple[Tri, dict]:
    tri = is_p_rational_quadratic(K, p)
    return tri, dict(tri.details)


def certify(K: Field, p: int, trials: Optional[int] = None) -> Tuple[Tri, dict]:
    if isinstance(K, QuadraticField):
        return certify_quadratic(K, p)
    return certify_cubic(K, p, trials)


def _certify_job(job: Tuple[Field, int, Optional[int]]) -> Tuple[Tri, dict]:
    K, p, trials = job
    return certify(K, p, trials)


def oracle_verdicts(oracle, polys: Sequence[IntPolynomial], p: int) -> List:
    return asyncio.run(oracle.oracle_many(polys, p))


def strategy(
    fields: Sequence[Field],
    p: int,
    oracle=None,
    jobs: Optional[int] = None,
    trials: Optional[int] = None,
) -> Tuple[List[FieldVerdict], StrategySummary]:
    summary = StrategySummary(total=len(fields))
    if not fields:
        return [], summary
    start = cpu_seconds()
    with WorkerPool(jobs) as pool:
        results = []
        for batch in pool.map_batches(_certify_job, [(K, p, trials) for K in fields]):
            results.extend(batch)
    summary.certificate_cpu = cpu_seconds() - start
    verdicts = [FieldVerdict(format_poly(field_polynomial(K).coeffs), p, tri, cert)
                for K, (tri, cert) in zip(fields, results)]
    pending = [i for i, v in enumerate(verdicts) if v.verdict.is_unknown]
    if pending and oracle is not None:
        if not oracle.available():
            LOGGER(__name__).warning("oracle binary not found, unresolved fields stay unknown")
        else:
            summary.oracle_sent = len(pending)
            wall = time.monotonic()
            answers = oracle_verdicts(oracle, [field_polynomial(fields[i]) for i in pending], p)
            summary.oracle_wall = time.monotonic() - wall
            for i, answer in zip(pending, answers):
                if isinstance(answer, Exception):
                    LOGGER(__name__).warning(f"{verdicts[i].poly}: oracle failed ({answer})")
                    continue
                v = verdicts[i]
                if answer.p_rational:
                    v.verdict = Tri.yes("oracle", n=answer.n)
                else:
                    v.verdict = Tri.no("oracle", n=answer.n, valuations=answer.valuations)
                v.oracle_used = True
                summary.oracle_resolved += 1
    for v in verdicts:
        if v.verdict.is_yes and not v.oracle_used:
            summary.certified += 1
        elif v.verdict.is_no and not v.oracle_used:
            summary.refuted += 1
        elif v.verdict.is_unknown:
            summary.unknown += 1
    LOGGER(__name__).info(f"strategy at p={p}: {summary.as_dict()}")
    return verdicts, summary
