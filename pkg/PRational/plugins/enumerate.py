from typing import Iterable, Iterator, List

from PRational.arith.polynomial import format_poly
from PRational.core.runconfig import RunConfig, UsageError, add_flags, emit
from PRational.fields.cubic import CyclicCubicField
from PRational.logging import LOGGER
from PRational.stats.enumeration import enumerate_cubic, enumerate_cubic_pairs, enumerate_multiquadratic
from PRational.utils.formatters import parse_group
from strings import get_command


def field_line(field: CyclicCubicField) -> str:
    return f"{field.conductor}\t{field.a}\t{field.b}\t{format_poly(field.poly.coeffs)}"


def read_fields(lines: Iterable[str]) -> Iterator[CyclicCubicField]:
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m, a, b = (int(x) for x in line.split("\t")[:3])
        yield CyclicCubicField.from_rep(m, a, b)


def enumerate_lines(run: RunConfig) -> List[str]:
    q, t = parse_group(run.group)
    if q == 2:
        if run.d_max is None:
            raise UsageError("--d-max is required for multiquadratic fields")
        return [" ".join(str(d) for d in ds) for ds in enumerate_multiquadratic(t, run.d_max)]
    if run.max_cond is None:
        raise UsageError("--max-cond is required for cubic fields")
    if t == 1:
        return [field_line(k) for k in enumerate_cubic(run.max_cond)]
    if t == 2:
        return [" ".join(k.label for k in ks) for ks in enumerate_cubic_pairs(run.max_cond)]
    raise UsageError(f"group {run.group} cannot be enumerated")


def cmd_enumerate(run: RunConfig, revision: str) -> int:
    try:
        lines = enumerate_lines(run)
    except ValueError as err:
        raise UsageError(str(err))
    emit("\n".join(lines) + "\n" if lines else "", run.out)
    LOGGER(__name__).info(f"{len(lines)} fields in {run.group}")
    return 0


def register(subparsers) -> None:
    name, *aliases = get_command("ENUMERATE_COMMAND")
    parser = subparsers.add_parser(name, aliases=aliases, help=__HELP__.strip().splitlines()[0])
    add_flags(parser, "group", "max-cond", "d-max", "out", "scale")
    parser.set_defaults(func=cmd_enumerate)


__MODULE__ = "Enumerate"
__HELP__ = """
Lists the fields of a family, one per line.

3^1: conductor, a, b and the defining polynomial, tab separated.
3^2: the labels of the four cubic subfields.
2^t: the generators d_1 ... d_t.
"""
