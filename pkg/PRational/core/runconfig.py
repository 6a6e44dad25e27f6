import argparse
import os
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import config
from PRational.utils.formatters import parse_group, parse_primes
from strings import get_string

from ..logging import LOGGER

DESK = "desk"
FULL = "full"

# bounds a default run may reach, above them --scale full is required
DESK_LIMITS = {"max_cond": 100000, "d_max": 300, "a_max": 2001}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group: Optional[str] = None
    primes: List[int] = field(default_factory=list)
    max_cond: Optional[int] = None
    d_max: Optional[int] = None
    event: Optional[str] = None
    jobs: int = 1
    seed: int = 0
    oracle_bin: Optional[str] = None
    oracle_timeout: Optional[int] = None
    out: Optional[str] = None
    resume: bool = False
    scale: str = DESK
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__ if f not in ("extra", "primes")}
        values = {k: v for k, v in vars(args).items() if k in known and v is not None}
        extra = {k: v for k, v in vars(args).items()
                 if k not in known and k not in ("func", "primes") and not k.startswith("_")}
        primes = getattr(args, "primes", None)
        run = cls(primes=list(primes) if primes else [], extra=extra, **values)
        run.validate()
        return run

    def validate(self) -> None:
        if self.group is not None:
            try:
                parse_group(self.group)
            except ValueError as err:
                raise UsageError(str(err))
        for bad in [p for p in self.primes if p <= 3]:
            raise UsageError(f"prime {bad} must exceed 3")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.scale not in (DESK, FULL):
            raise UsageError(f"--scale must be {DESK} or {FULL}")
        if self.scale == DESK:
            for name, limit in DESK_LIMITS.items():
                value = getattr(self, name, None) or self.extra.get(name)
                if value is not None and value > limit:
                    flag = "--" + name.replace("_", "-")
                    raise UsageError(get_string("en")["scale_limit"].format(flag, value, limit))

    def apply(self) -> None:
        """Push the seed and pool size into the process configuration, workers included."""
        config.SEED = self.seed
        config.JOBS = self.jobs
        os.environ["SEED"] = str(self.seed)
        os.environ["JOBS"] = str(self.jobs)
        LOGGER(__name__).info(f"Run Config for {self.command} Initialized.")

    def header(self, revision: str) -> dict:
        """Provenance for report headers, without the flags that only affect how a run executes."""
        data = asdict(self)
        for volatile in ("jobs", "resume", "out"):
            data.pop(volatile)
        data["revision"] = revision
        return data


def primes_arg(text: str) -> List[int]:
    try:
        return parse_primes(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def group_arg(text: str) -> str:
    try:
        parse_group(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))
    return text


def add_flags(parser: argparse.ArgumentParser, *names: str) -> None:
    _ = get_string("en")
    specs = {
        "group": dict(type=group_arg, default="3^1", help=_["flag_group"]),
        "primes": dict(type=primes_arg, required=True, help=_["flag_primes"]),
        "max-cond": dict(type=int, help=_["flag_max_cond"]),
        "d-max": dict(type=int, help=_["flag_d_max"]),
        "event": dict(choices=("class", "reg", "subfield-reg", "kuroda3"), help=_["flag_event"]),
        "jobs": dict(type=int, default=config.JOBS, help=_["flag_jobs"]),
        "seed": dict(type=int, default=config.SEED, help=_["flag_seed"]),
        "oracle-bin": dict(default=None, help=_["flag_oracle_bin"]),
        "oracle-timeout": dict(type=int, default=config.ORACLE_TIMEOUT, help=_["flag_oracle_timeout"]),
        "out": dict(default=None, help=_["flag_out"]),
        "resume": dict(action="store_true", help=_["flag_resume"]),
        "scale": dict(choices=(DESK, FULL), default=DESK, help=_["flag_scale"]),
        "trials": dict(type=int, default=config.CLASS_TRIALS, help=_["flag_trials"]),
    }
    for name in names:
        parser.add_argument(f"--{name}", **specs[name])


def emit(text: str, out: Optional[str]) -> None:
    if out:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, "w", encoding="utf8") as f:
            f.write(text)
        LOGGER(__name__).info(f"Wrote {out}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")
