"""Density experiments: stream fields, run the certificates, count events per prime."""

import asyncio
import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import config
from PRational.certificates.classtest import gras_vdl
from PRational.certificates.regulator import quadratic_unit_log, reg_certificate_cubic
from PRational.core.pool import WorkerPool, batched
from PRational.fields.cubic import CyclicCubicField
from PRational.fields.units import find_unit
from PRational.logging import LOGGER
from PRational.stats.densities import (
    expected_density_class,
    expected_density_class_compositum,
    expected_density_compositum,
    expected_density_regulator,
    relative_error,
)
from PRational.stats.enumeration import (
    enumerate_cubic,
    enumerate_cubic_pairs,
    enumerate_multiquadratic,
    multiquadratic_subfields,
)
from PRational.utils.exceptions import (
    BadSupport,
    CheckpointCorrupt,
    NoGeneratorFound,
    PRationalError,
    RamifiedPrime,
)

CLASS_DIV = "class"
REG_DIV = "reg"
SUBFIELD_REG_DIV = "subfield-reg"
KURODA3 = "kuroda3"
EVENTS = (CLASS_DIV, REG_DIV, SUBFIELD_REG_DIV, KURODA3)

# per-field outcome at one prime
NONE, CONFIRMED, UNRESOLVED = 0, 1, 2

CSV_HEADER = [
    "group", "p", "bound", "total", "events_confirmed", "events_unresolved",
    "stat_density", "conj_density", "rel_error",
]


@dataclass
class DensityReport:
    group: str
    p: int
    bound: int
    total: int = 0
    events_confirmed: int = 0
    events_unresolved: int = 0
    conj_density: float = 0.0

    @property
    def events(self) -> int:
        return self.events_confirmed + self.events_unresolved

    @property
    def stat_density(self) -> Fraction:
        """Upper bound: confirmed plus unresolved events over all fields."""
        return Fraction(self.events, self.total) if self.total else Fraction(0)

    @property
    def rel_error(self) -> float:
        return relative_error(float(self.stat_density), self.conj_density)

    def as_row(self) -> List[str]:
        return [
            self.group, str(self.p), str(self.bound), str(self.total),
            str(self.events_confirmed), str(self.events_unresolved),
            str(self.stat_density), repr(self.conj_density), f"{self.rel_error:.6g}",
        ]

    @classmethod
    def from_row(cls, row: Sequence[str]) -> "DensityReport":
        values = dict(zip(CSV_HEADER, row))
        return cls(
            values["group"], int(values["p"]), int(values["bound"]), int(values["total"]),
            int(values["events_confirmed"]), int(values["events_unresolved"]),
            float(values["conj_density"]),
        )


@dataclass
class ExperimentSpec:
    group: str
    primes: List[int]
    bound: int
    event: str
    trials: int = field(default_factory=lambda: config.CLASS_TRIALS)

    @property
    def q_t(self) -> Tuple[int, int]:
        q, t = self.group.split("^")
        return int(q), int(t)

    def validate(self) -> None:
        q, t = self.q_t
        allowed = {
            (3, 1): (CLASS_DIV, REG_DIV),
            (3, 2): (KURODA3,),
        }
        if q == 2:
            ok = self.event == SUBFIELD_REG_DIV
        else:
            ok = self.event in allowed.get((q, t), ())
        if not ok:
            raise ValueError(f"event {self.event!r} is not available for group {self.group}")

    def conj_density(self, p: int) -> float:
        q, t = self.q_t
        if self.event == CLASS_DIV:
            return expected_density_class(3, p)
        if self.event == REG_DIV:
            return float(expected_density_regulator(p))
        if self.event == SUBFIELD_REG_DIV:
            return expected_density_compositum(q, t, p)
        return expected_density_class_compositum(3, 2, p)


def stream_items(spec: ExperimentSpec) -> Iterator:
    q, t = spec.q_t
    if q == 2:
        return enumerate_multiquadratic(t, spec.bound)
    if t == 1:
        return enumerate_cubic(spec.bound)
    return enumerate_cubic_pairs(spec.bound)


def _class_outcome(cubic: CyclicCubicField, p: int, trials: int) -> int:
    return NONE if gras_vdl(cubic, p, trials).not_divisible else UNRESOLVED


def _reg_outcome(cubic: CyclicCubicField, unit, p: int) -> int:
    if unit is None:
        return UNRESOLVED
    try:
        return NONE if reg_certificate_cubic(cubic, unit, p).not_divisible else UNRESOLVED
    except (RamifiedPrime, BadSupport):
        return UNRESOLVED


def _subfield_reg_outcome(ds: Tuple[int, ...], p: int) -> int:
    ramified = False
    for d in multiquadratic_subfields(ds):
        try:
            if quadratic_unit_log(d, p) == 0:
                return CONFIRMED
        except RamifiedPrime:
            ramified = True
    return UNRESOLVED if ramified else NONE


def evaluate(job: Tuple[str, object, Tuple[int, ...], int]) -> Tuple[int, ...]:
    """Outcome per prime for one field; module level so worker processes can run it."""
    event, item, primes, trials = job
    if event == CLASS_DIV:
        return tuple(_class_outcome(item, p, trials) for p in primes)
    if event == REG_DIV:
        try:
            unit, _ = find_unit(item)
        except (NoGeneratorFound, PRationalError) as err:
            LOGGER(__name__).warning(f"{item}: no unit found ({err})")
            unit = None
        return tuple(_reg_outcome(item, unit, p) for p in primes)
    if event == SUBFIELD_REG_DIV:
        return tuple(_subfield_reg_outcome(item, p) for p in primes)
    out = []
    for p in primes:
        outcomes = [_class_outcome(k, p, trials) for k in item]
        out.append(UNRESOLVED if UNRESOLVED in outcomes else NONE)
    return tuple(out)


def _item_poly(event: str, item):
    if event in (CLASS_DIV, REG_DIV):
        return item.poly
    return None


class Checkpoint:
    """Line-delimited JSON: one line per flushed batch, the last line wins."""

    def __init__(self, path: Optional[str]):
        self.path = path

    def load(self) -> Optional[dict]:
        if not self.path or not os.path.exists(self.path):
            return None
        last = None
        with open(self.path, encoding="utf8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    last = json.loads(line)
                except json.JSONDecodeError:
                    raise CheckpointCorrupt(f"{self.path}:{lineno} is not valid JSON")
        if last is not None and not {"cursor", "counters", "seed"} <= set(last):
            raise CheckpointCorrupt(f"{self.path}: last line lacks cursor/counters/seed")
        return last

    def write(self, state: dict) -> None:
        if not self.path:
            return
        with open(self.path, "a", encoding="utf8") as f:
            f.write(json.dumps(state, sort_keys=True) + "\n")


def _confirm_with_oracle(oracle, polys: List, p: int) -> List[Optional[bool]]:
    """True when the oracle says the field is not p-rational, None when it could not say."""
    if oracle is None or not polys:
        return [None] * len(polys)
    results = asyncio.run(oracle.oracle_many(polys, p))
    out = []
    for r in results:
        if isinstance(r, Exception):
            out.append(None)
        else:
            out.append(not r.p_rational)
    return out


def run_density_experiment(
    spec: ExperimentSpec,
    checkpoint: Optional[str] = None,
    resume: bool = False,
    jobs: Optional[int] = None,
    oracle=None,
    items: Optional[Iterable] = None,
) -> List[DensityReport]:
    spec.validate()
    reports = {p: DensityReport(spec.group, p, spec.bound, conj_density=spec.conj_density(p))
               for p in spec.primes}
    ckpt = Checkpoint(checkpoint)
    cursor = 0
    if resume:
        state = ckpt.load()
        if state is not None:
            if state.get("group") != spec.group or state.get("event") != spec.event \
                    or state.get("bound") != spec.bound:
                raise CheckpointCorrupt(f"{checkpoint} belongs to a different experiment")
            cursor = state["cursor"]
            for p, counts in state["counters"].items():
                if int(p) in reports:
                    r = reports[int(p)]
                    r.total, r.events_confirmed, r.events_unresolved = counts
            LOGGER(__name__).info(f"Resuming {spec.group}/{spec.event} at item {cursor}")
    elif checkpoint and os.path.exists(checkpoint):
        os.remove(checkpoint)
    if oracle is not None and spec.event != REG_DIV:
        oracle = None
    stream = islice(items if items is not None else stream_items(spec), cursor, None)
    primes = tuple(spec.primes)
    with WorkerPool(jobs) as pool:
        for batch in batched(stream, config.CHECKPOINT_EVERY):
            jobs_ = [(spec.event, item, primes, spec.trials) for item in batch]
            outcomes = pool.run_batch(evaluate, jobs_)
            for k, p in enumerate(primes):
                pending = [i for i, o in enumerate(outcomes) if o[k] == UNRESOLVED]
                verdicts = _confirm_with_oracle(
                    oracle, [_item_poly(spec.event, batch[i]) for i in pending], p)
                resolved = dict(zip(pending, verdicts))
                r = reports[p]
                for i, o in enumerate(outcomes):
                    r.total += 1
                    if o[k] == CONFIRMED or resolved.get(i) is True:
                        r.events_confirmed += 1
                    elif o[k] == UNRESOLVED and resolved.get(i) is None:
                        r.events_unresolved += 1
            cursor += len(batch)
            ckpt.write({
                "group": spec.group, "event": spec.event, "bound": spec.bound,
                "cursor": cursor, "seed": config.SEED,
                "counters": {str(p): [r.total, r.events_confirmed, r.events_unresolved]
                             for p, r in reports.items()},
            })
            LOGGER(__name__).info(f"{spec.group}/{spec.event}: {cursor} fields processed")
    return [reports[p] for p in spec.primes]


def write_report(reports: Sequence[DensityReport], path: str, header: Optional[dict] = None) -> str:
    buf = io.StringIO()
    if header is not None:
        buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(r.as_row())
    text = buf.getvalue()
    if path:
        with open(path, "w", encoding="utf8") as f:
            f.write(text)
    return text


def read_report(text: str) -> List[DensityReport]:
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("not a density report")
    return [DensityReport.from_row(row) for row in rows[1:]]
