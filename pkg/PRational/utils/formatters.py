from fractions import Fraction
from typing import List, Tuple

from sympy import isprime


def get_readable_time(seconds: float) -> str:
    seconds = int(seconds)
    parts = []
    for suffix, size in (("days", 86400), ("h", 3600), ("m", 60)):
        value, seconds = divmod(seconds, size)
        if value or parts:
            parts.append(f"{value}{suffix}")
    parts.append(f"{seconds}s")
    if parts[0].endswith("days"):
        return parts[0] + ", " + ":".join(parts[1:])
    return ":".join(parts)


def parse_primes(text: str) -> List[int]:
    """"5,7,11" -> [5, 7, 11]; every entry must be a prime above 3."""
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"cannot read a prime list from {text!r}")
    bad = [p for p in primes if p <= 3 or not isprime(p)]
    if bad or not primes:
        raise ValueError(f"primes must exceed 3, got {text!r}")
    return primes


def parse_group(text: str) -> Tuple[int, int]:
    """"3^1" -> (3, 1), "2^3" -> (2, 3)."""
    try:
        q, t = (int(x) for x in text.split("^"))
    except ValueError:
        raise ValueError(f"group must look like q^t, got {text!r}")
    if q not in (2, 3) or t < 1:
        raise ValueError(f"unsupported group {text!r}")
    return q, t


def format_ratio(num: int, den: int) -> str:
    if den == 0:
        return "0/0"
    return f"{num}/{den} ≈ {float(Fraction(num, den)):.3g}"


def format_float(x: float) -> str:
    return f"{x:.6g}"
