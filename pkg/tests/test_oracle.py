import asyncio
import os

import pytest

from PRational.arith.polynomial import IntPolynomial
from PRational.platforms import OracleVerdict, PariAPI
from PRational.utils.exceptions import OracleParseError, OracleUnavailable

PRATIONAL = "  ***   bnfinit warnings\nPRAT true FI  N 3\n"
NOT_PRATIONAL = "PRAT false FI 1,0,2 N 5\n"


def test_parse_verdict_lines():
    v = PariAPI.parse(PRATIONAL)
    assert v.p_rational and v.valuations == [] and v.n == 3
    v = PariAPI.parse(NOT_PRATIONAL)
    assert not v.p_rational and v.valuations == [1, 0, 2] and v.n == 5


def test_parse_rejects_garbage():
    with pytest.raises(OracleParseError) as info:
        PariAPI.parse("  *** bnrinit: not enough memory\n")
    assert "not enough memory" in info.value.transcript


def test_parse_rejects_inconsistent_verdicts():
    with pytest.raises(OracleParseError):
        PariAPI.parse("PRAT true FI 0,1 N 4\n")
    with pytest.raises(OracleParseError):
        PariAPI.parse("PRAT false FI 0,0 N 4\n")
    assert OracleVerdict(True, [0, 0], 4).p_rational


def test_script_embeds_polynomial_and_prime():
    api = PariAPI(binary="gp")
    script = api.script(IntPolynomial((1, 1, 1, 1, 1)), 7)
    assert "f = x^4+x^3+x^2+x+1;" in script
    assert "p = 7;" in script
    assert api.script("x^2 - 2", 5) == api.script(IntPolynomial((-2, 0, 1)), 5)


def test_transcripts_replay(tmp_path):
    api = PariAPI(binary="gp", transcript_dir=str(tmp_path))
    path = tmp_path / "saved.log"
    path.write_text(NOT_PRATIONAL)
    verdict = asyncio.run(api.replay(str(path)))
    assert verdict == PariAPI.parse(NOT_PRATIONAL)


def test_missing_binary_is_unavailable(tmp_path):
    api = PariAPI(binary="no-such-gp-binary", transcript_dir=str(tmp_path))
    assert not api.available()
    with pytest.raises(OracleUnavailable):
        asyncio.run(api.oracle_p_rational("x^2 - 2", 5))
    (answer,) = asyncio.run(api.oracle_many(["x^2 - 2"], 5))
    assert isinstance(answer, OracleUnavailable)


@pytest.mark.oracle
@pytest.mark.parametrize("p", [5, 7, 11, 13, 97])
def test_fifth_cyclotomic_field_is_p_rational(gp, p):
    assert asyncio.run(gp.oracle_p_rational("x^4 + x^3 + x^2 + x + 1", p)).p_rational


@pytest.mark.oracle
def test_quartic_not_7_rational(gp):
    verdict = asyncio.run(gp.oracle_p_rational("x^4 + 10*x^2 + 1", 7))
    assert not verdict.p_rational and any(verdict.valuations)


@pytest.mark.oracle
def test_oracle_transcript_reproduces_verdict(gp):
    poly = IntPolynomial((-2, 0, 1))
    verdict = asyncio.run(gp.oracle_p_rational(poly, 5))
    log = gp._stem(poly, 5) + ".log"
    assert os.path.exists(log)
    assert asyncio.run(gp.replay(log)) == verdict


@pytest.mark.oracle
def test_strategy_agrees_with_the_oracle(gp):
    from PRational.prationality.strategy import strategy
    from PRational.stats.enumeration import enumerate_cubic

    fields = list(enumerate_cubic(200))
    verdicts, _ = strategy(fields, 5)
    decided = [(K, v) for K, v in zip(fields, verdicts) if not v.verdict.is_unknown]
    answers = asyncio.run(gp.oracle_many([K.poly for K, _ in decided], 5))
    for (K, v), answer in zip(decided, answers):
        assert v.verdict.is_yes == answer.p_rational, K
