import json
from typing import Optional

from sympy import isprime

from PRational.arith.ntheory import mult_order
from PRational.certificates.classtest import family_residue_check
from PRational.certificates.regulator import simplest_cubic_m, simplest_cubic_rank
from PRational.core.runconfig import RunConfig, add_flags, emit
from PRational.fields.cubic import family_field
from PRational.logging import LOGGER
from PRational.prationality.strategy import certify_cubic
from PRational.utils.exceptions import NotInFamily
from strings import get_command, get_string

FAMILY_PRIME = 5


def scan_row(a: int, certify: bool = True) -> dict:
    """One row per odd a; the simplest cubic with s = (a-3)/2 has the same conductor m = (a²+27)/4."""
    m = (a * a + 27) // 4
    s = (a - 3) // 2
    if simplest_cubic_m(s) != m:
        raise ArithmeticError(f"a = {a}: simplest cubic s = {s} has m = {simplest_cubic_m(s)}, not {m}")
    row = {"a": a, "m": m, "s": s, "rank": simplest_cubic_rank(s, FAMILY_PRIME)}
    if not isprime(m):
        row.update(gate="m-not-prime", residue_condition=None, irreducible_mod_2=None, candidate=False)
        return row
    row["gate"] = "ok"
    row["residue_condition"] = family_residue_check(m)
    row["irreducible_mod_2"] = mult_order(2, m) == m - 1
    row["candidate"] = row["residue_condition"] and row["irreducible_mod_2"] and row["rank"] == 2
    if row["candidate"] and certify:
        try:
            tri, _ = certify_cubic(family_field(a), FAMILY_PRIME)
        except NotInFamily as err:
            LOGGER(__name__).warning(f"a = {a}: {err}")
        else:
            row["certified"] = tri.as_dict()
    return row


def cmd_family(run: RunConfig, revision: str) -> int:
    a_max: Optional[int] = run.extra.get("a_max")
    lines = ["# " + json.dumps(run.header(revision), sort_keys=True)]
    candidates = 0
    for a in range(1, a_max + 1, 2):
        row = scan_row(a, certify=not run.extra.get("no_certify"))
        candidates += bool(row["candidate"])
        lines.append(json.dumps(row, default=str))
    LOGGER(__name__).info(f"family scan up to a = {a_max}: {candidates} candidates")
    emit("\n".join(lines) + "\n", run.out)
    return 0


def register(subparsers) -> None:
    _ = get_string("en")
    name, *aliases = get_command("FAMILY_COMMAND")
    parser = subparsers.add_parser(name, aliases=aliases, help=__HELP__.strip().splitlines()[0])
    add_flags(parser, "seed", "out", "scale")
    parser.add_argument("--a-max", type=int, default=25, help=_["flag_a_max"])
    parser.add_argument("--no-certify", action="store_true", help=_["flag_no_certify"])
    parser.set_defaults(func=cmd_family)


__MODULE__ = "Family"
__HELP__ = """
Scans the conductors m = (a^2+27)/4 for 5-rational cyclic cubic fields.

Per odd a: the rank at 5 of the Schirokauer matrix of the two explicit units of
the simplest cubic x^3 - s x^2 - (s+3) x - 1 with s = (a-3)/2, which has the
same conductor, whether m is prime with Phi_m irreducible mod 11 and mod 2 and the
residue condition on (x+1), and for the candidates the certificates at 5.
"""
