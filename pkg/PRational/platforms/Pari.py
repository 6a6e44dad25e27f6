import asyncio
import hashlib
import os
import re
import shutil
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Union

import aiofiles

import config
from PRational.arith.polynomial import IntPolynomial, format_poly
from PRational.logging import LOGGER
from PRational.utils.exceptions import OracleParseError, OracleTimeout, OracleUnavailable

VERDICT_LINE = re.compile(r"PRAT (true|false) FI ([0-9,]*) N (\d+)")

# Stabilization loop on the p-parts of the ray class groups mod p^n.
SCRIPT = """\\\\ p-rationality of the field defined by f at p
default(parisize, "512M");
f = {poly};
p = {p};
K = bnfinit(f, 1);
r2 = K.sign[2];
dec = idealprimedec(K, p);
e = vecmax(vector(#dec, i, dec[i].e));
n = 2 + valuation(e, p);
pparts(k) = my(c = bnrinit(K, p^k).cyc); vecsort(vector(#c, i, p^valuation(c[i], p)), , 4);
pad(v) = concat(v, vector(max(0, r2 + 1 - #v), i, 1));
split(v) = my(w = pad(v)); [w[1..r2+1], if(#w > r2 + 1, w[r2+2..#w], [])];
old = split(pparts(n));
while(1, n++; new = split(pparts(n)); \\
  if(new[1] == p * old[1] && vecmin(new[1]) > p * vecmax(concat(new[2], [1])), break); \\
  old = new);
b = new[2];
print("PRAT ", if(vecmax(concat(b, [1])) == 1, "true", "false"), \\
      " FI ", strjoin(apply(x -> Str(valuation(x, p)), b), ","), " N ", n);
quit;
"""


@dataclass
class OracleVerdict:
    p_rational: bool
    valuations: List[int]
    n: int
    transcript: str = field(default="", repr=False)

    def __post_init__(self):
        if self.p_rational != all(v == 0 for v in self.valuations):
            raise OracleParseError("verdict disagrees with the invariant factor valuations",
                                   self.transcript)


def _poly_text(poly: Union[IntPolynomial, str]) -> str:
    if isinstance(poly, IntPolynomial):
        poly = format_poly(poly.coeffs)
    return poly.replace(" ", "")


class PariAPI:
    def __init__(self, binary: str = None, timeout: int = None, concurrency: int = None,
                 transcript_dir: str = None):
        self.binary = binary or config.ORACLE_BIN
        self.timeout = timeout or config.ORACLE_TIMEOUT
        self.transcript_dir = transcript_dir or config.TRANSCRIPT_DIR
        self.concurrency = concurrency or config.ORACLE_CONCURRENCY
        self._semaphore = None

    @property
    def semaphore(self) -> asyncio.Semaphore:
        if self._semaphore is None:
            self._semaphore = asyncio.Semaphore(self.concurrency)
        return self._semaphore

    def available(self) -> bool:
        return shutil.which(self.binary) is not None

    def script(self, poly: Union[IntPolynomial, str], p: int) -> str:
        return SCRIPT.format(poly=_poly_text(poly), p=p)

    def _stem(self, poly: Union[IntPolynomial, str], p: int) -> str:
        digest = hashlib.sha1(_poly_text(poly).encode()).hexdigest()[:12]
        return os.path.join(self.transcript_dir, f"{digest}_p{p}")

    @staticmethod
    def parse(text: str) -> OracleVerdict:
        match = VERDICT_LINE.search(text)
        if not match:
            raise OracleParseError("no verdict line in oracle output", text)
        flag, fi, n = match.groups()
        valuations = [int(v) for v in fi.split(",") if v]
        return OracleVerdict(flag == "true", valuations, int(n), text)

    async def replay(self, path: str) -> OracleVerdict:
        async with aiofiles.open(path, "r") as f:
            return self.parse(await f.read())

    async def oracle_p_rational(self, poly: Union[IntPolynomial, str], p: int,
                                timeout: Optional[int] = None) -> OracleVerdict:
        if not self.available():
            raise OracleUnavailable(f"oracle binary {self.binary!r} not found")
        timeout = timeout or self.timeout
        os.makedirs(self.transcript_dir, exist_ok=True)
        stem = self._stem(poly, p)
        async with aiofiles.open(f"{stem}.gp", "w") as f:
            await f.write(self.script(poly, p))
        async with self.semaphore:
            try:
                proc = await asyncio.create_subprocess_exec(
                    self.binary, "-q", "-f", f"{stem}.gp",
                    stdin=asyncio.subprocess.DEVNULL,
                    stdout=asyncio.subprocess.PIPE,
                    stderr=asyncio.subprocess.PIPE,
                )
            except (FileNotFoundError, PermissionError) as err:
                raise OracleUnavailable(f"cannot start {self.binary}: {err}")
            try:
                stdout, stderr = await asyncio.wait_for(proc.communicate(), timeout)
            except asyncio.TimeoutError:
                proc.kill()
                await proc.wait()
                LOGGER(__name__).warning(f"oracle timed out after {timeout}s on {_poly_text(poly)} at p={p}")
                raise OracleTimeout(f"no verdict within {timeout}s for {_poly_text(poly)}")
        text = stdout.decode("utf-8", "replace") + stderr.decode("utf-8", "replace")
        async with aiofiles.open(f"{stem}.log", "w") as f:
            await f.write(text)
        verdict = self.parse(text)
        LOGGER(__name__).info(
            f"oracle: {_poly_text(poly)} at p={p} -> {'rational' if verdict.p_rational else 'not rational'} (n={verdict.n})"
        )
        return verdict

    async def oracle_many(self, polys: Iterable[Union[IntPolynomial, str]], p: int) -> List:
        """Verdicts in input order; failures are returned as exceptions."""
        # a semaphore belongs to the loop it was first awaited on
        self._semaphore = asyncio.Semaphore(self.concurrency)
        tasks = [self.oracle_p_rational(f, p) for f in polys]
        return await asyncio.gather(*tasks, return_exceptions=True)
