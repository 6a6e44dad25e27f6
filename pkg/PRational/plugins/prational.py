import json
from typing import List

from PRational import Pari
from PRational.core.runconfig import RunConfig, UsageError, add_flags, emit, primes_arg
from PRational.logging import LOGGER
from PRational.platforms import PariAPI
from PRational.plugins.enumerate import read_fields
from PRational.prationality.greedy import (
    GREEDY_GENERATORS,
    greedy_search,
    growth_diagnostic,
    verify_greedy_generators,
)
from PRational.prationality.strategy import strategy
from PRational.stats.enumeration import enumerate_cubic
from PRational.utils.exceptions import CapExceeded
from PRational.utils.formatters import format_float
from strings import get_command, get_string


def pick_oracle(run: RunConfig):
    if run.extra.get("no_oracle"):
        return None
    oracle = Pari
    if run.oracle_bin or run.oracle_timeout != Pari.timeout:
        oracle = PariAPI(binary=run.oracle_bin, timeout=run.oracle_timeout)
    if not oracle.available():
        LOGGER(__name__).warning(get_string("en")["oracle_missing"].format(oracle.binary))
        return None
    return oracle


def _greedy_row_lines(run: RunConfig, p: int) -> List[str]:
    verdict = verify_greedy_generators(p, run.extra.get("prefix"), pick_oracle(run))
    gens = GREEDY_GENERATORS[p][:run.extra.get("prefix")] if run.extra.get("prefix") else GREEDY_GENERATORS[p]
    return [json.dumps({"p": p, "generators": list(gens), **verdict.as_dict()}, default=str)]


def cmd_prational(run: RunConfig, revision: str) -> int:
    greedy_p = run.extra.get("verify_greedy")
    if greedy_p is not None:
        if greedy_p not in GREEDY_GENERATORS:
            known = sorted(GREEDY_GENERATORS)
            raise UsageError(f"no recorded generators for p = {greedy_p}; known: {known}")
        emit("\n".join(_greedy_row_lines(run, greedy_p)) + "\n", run.out)
        return 0
    if not run.primes:
        raise UsageError("--primes is required")
    if run.extra.get("fields"):
        with open(run.extra["fields"], encoding="utf8") as f:
            fields = list(read_fields(f))
    elif run.max_cond:
        fields = list(enumerate_cubic(run.max_cond))
    else:
        raise UsageError("either --fields or --max-cond is required")
    oracle = pick_oracle(run)
    _ = get_string("en")
    lines = ["# " + json.dumps(run.header(revision), sort_keys=True)]
    for p in run.primes:
        verdicts, summary = strategy(fields, p, oracle, jobs=run.jobs, trials=run.extra.get("trials"))
        lines.extend(v.to_json() for v in verdicts)
        lines.append("# " + json.dumps({"p": p, "summary": summary.as_dict()}, sort_keys=True))
        LOGGER(__name__).info(_["summary_line"].format(
            summary.total, summary.certified, summary.refuted, summary.oracle_sent,
            summary.unknown, format_float(summary.speedup)))
    emit("\n".join(lines) + "\n", run.out)
    return 0


def cmd_greedy(run: RunConfig, revision: str) -> int:
    lines = ["# " + json.dumps(run.header(revision), sort_keys=True)]
    for p in run.primes:
        try:
            seq = greedy_search(run.extra["t"], p, run.d_max, run.extra.get("final_imaginary", False))
            status = "complete"
        except CapExceeded as err:
            LOGGER(__name__).warning(str(err))
            seq, status = err.partial, "cap-exceeded"
        growth = [[i, d, round(g, 4)] for i, d, g in growth_diagnostic(seq)]
        lines.append(json.dumps({"p": p, "status": status, "generators": seq, "growth": growth}))
    emit("\n".join(lines) + "\n", run.out)
    return 0


def register(subparsers) -> None:
    _ = get_string("en")
    name, *aliases = get_command("PRATIONAL_COMMAND")
    parser = subparsers.add_parser(name, aliases=aliases, help=__HELP__.strip().splitlines()[0])
    add_flags(parser, "max-cond", "jobs", "seed", "oracle-bin", "oracle-timeout", "out", "scale", "trials")
    parser.add_argument("--primes", type=primes_arg, default=None, help=_["flag_primes"])
    parser.add_argument("--fields", default=None, help=_["flag_fields"])
    parser.add_argument("--verify-table1", "--verify-greedy", dest="verify_greedy", type=int, default=None,
                        metavar="P", help=_["flag_verify_greedy"])
    parser.add_argument("--prefix", type=int, default=None, help=_["flag_prefix"])
    parser.add_argument("--no-oracle", action="store_true", help=_["flag_no_oracle"])
    parser.set_defaults(func=cmd_prational)

    name, *aliases = get_command("GREEDY_COMMAND")
    greedy = subparsers.add_parser(name, aliases=aliases, help=_["greedy_help"])
    add_flags(greedy, "primes", "d-max", "seed", "out", "scale")
    greedy.add_argument("--t", type=int, required=True, help=_["flag_t"])
    greedy.add_argument("--final-imaginary", action="store_true", help=_["flag_final_imaginary"])
    greedy.set_defaults(func=cmd_greedy)


__MODULE__ = "Prational"
__HELP__ = """
Decides p-rationality of cyclic cubic fields: certificates first, the oracle for the rest.

One JSON line per field and prime, then a summary line with the share sent to the oracle.
--verify-table1 P (or --verify-greedy P) checks the recorded greedy generators for P instead.
The greedy command searches multiquadratic fields whose subfields are all p-rational.
"""
