import os

import config
from PRational.core.runconfig import RunConfig, UsageError, add_flags, emit
from PRational.logging import LOGGER
from PRational.platforms import PariAPI
from PRational.stats.experiment import (
    CLASS_DIV,
    KURODA3,
    SUBFIELD_REG_DIV,
    ExperimentSpec,
    run_density_experiment,
    write_report,
)
from PRational.utils.exceptions import OracleUnavailable
from PRational.utils.formatters import format_ratio, parse_group
from strings import get_command

DEFAULT_EVENT = {(3, 1): CLASS_DIV, (3, 2): KURODA3}


def experiment_spec(run: RunConfig) -> ExperimentSpec:
    q, t = parse_group(run.group)
    bound = run.d_max if q == 2 else run.max_cond
    if bound is None:
        raise UsageError("--d-max is required for 2^t" if q == 2 else "--max-cond is required")
    event = run.event or (SUBFIELD_REG_DIV if q == 2 else DEFAULT_EVENT.get((q, t)))
    spec = ExperimentSpec(run.group, run.primes, bound, event, run.extra.get("trials", config.CLASS_TRIALS))
    try:
        spec.validate()
    except ValueError as err:
        raise UsageError(str(err))
    return spec


def checkpoint_path(spec: ExperimentSpec) -> str:
    name = f"{spec.group.replace('^', '_')}_{spec.event}_{spec.bound}.jsonl"
    return os.path.join(config.CHECKPOINT_DIR, name)


def density_oracle(run: RunConfig):
    if not run.oracle_bin:
        return None
    oracle = PariAPI(binary=run.oracle_bin, timeout=run.oracle_timeout)
    if not oracle.available():
        raise OracleUnavailable(f"oracle binary {run.oracle_bin!r} not found")
    return oracle


def cmd_density(run: RunConfig, revision: str) -> int:
    spec = experiment_spec(run)
    reports = run_density_experiment(
        spec,
        checkpoint=checkpoint_path(spec),
        resume=run.resume,
        jobs=run.jobs,
        oracle=density_oracle(run),
    )
    emit(write_report(reports, None, run.header(revision)), run.out)
    for r in reports:
        LOGGER(__name__).info(
            f"{spec.group} p={r.p}: {format_ratio(r.events, r.total)} "
            f"({r.events_unresolved} unresolved) vs {r.conj_density:.4g}"
        )
    return 0


def register(subparsers) -> None:
    name, *aliases = get_command("DENSITY_COMMAND")
    parser = subparsers.add_parser(name, aliases=aliases, help=__HELP__.strip().splitlines()[0])
    add_flags(parser, "group", "primes", "max-cond", "d-max", "event", "jobs", "seed",
              "oracle-bin", "oracle-timeout", "out", "resume", "scale", "trials")
    parser.set_defaults(func=cmd_density)


__MODULE__ = "Density"
__HELP__ = """
Counts divisibility events per prime and compares them with the heuristic density.

Events: class (3^1), reg (3^1), kuroda3 (3^2), subfield-reg (2^t).
Unresolved fields count towards the upper bound unless an oracle settles them.
A checkpoint line is written every CHECKPOINT_EVERY fields; --resume picks it up.
"""
