import json
import math

import pytest

from PRational.fields.cubic import fields_from_conductor
from PRational.platforms import OracleVerdict
from PRational.prationality.compositum import (
    CompositumSpec,
    field_from_key,
    is_p_rational_compositum,
    subfields_of_compositum,
)
from PRational.prationality.greedy import (
    GREEDY_GENERATORS,
    greedy_search,
    growth_diagnostic,
    verify_greedy_generators,
)
from PRational.prationality.strategy import FieldVerdict, certify_cubic, strategy
from PRational.stats.enumeration import character_key, enumerate_cubic
from PRational.utils.exceptions import (
    CapExceeded,
    DegreeDivisibleByP,
    DependentGenerators,
    InvalidConductor,
)
from PRational.utils.verdict import Tri


class ScriptedOracle:
    """Answers every field the same way without running gp."""

    def __init__(self, p_rational, fail=False):
        self.p_rational = p_rational
        self.fail = fail
        self.calls = 0

    def available(self):
        return True

    async def oracle_many(self, polys, p):
        polys = list(polys)
        self.calls += len(polys)
        if self.fail:
            return [RuntimeError("gp crashed") for _ in polys]
        valuations = [] if self.p_rational else [1]
        return [OracleVerdict(self.p_rational, valuations, 3) for _ in polys]


@pytest.fixture(scope="module")
def k7():
    return fields_from_conductor(7)[0]


def test_compositum_spec_validation():
    with pytest.raises(ValueError):
        CompositumSpec(5, (2,))
    with pytest.raises(ValueError):
        CompositumSpec(2, ())
    spec = CompositumSpec(2, (2, 3, -1))
    assert spec.t == 3 and spec.degree == 8
    assert str(spec) == "Q(sqrt(2), sqrt(3), sqrt(-1))"


def test_quadratic_compositum_subfields():
    ds = [K.d for K in subfields_of_compositum(CompositumSpec(2, (2, 3)))]
    assert ds == [2, 3, 6]
    with pytest.raises(DependentGenerators):
        subfields_of_compositum(CompositumSpec(2, (2, 3, 6)))


def test_cubic_compositum_subfields(k7):
    k9 = fields_from_conductor(9)[0]
    subfields = subfields_of_compositum(CompositumSpec(3, (k7, k9)))
    assert sorted(K.conductor for K in subfields) == [7, 9, 63, 63]
    assert subfields[0] is k7
    with pytest.raises(DependentGenerators):
        subfields_of_compositum(CompositumSpec(3, (k7, k7)))


def test_field_from_key_finds_the_character():
    for K in fields_from_conductor(63):
        assert field_from_key(character_key(K.character)).poly == K.poly
    with pytest.raises(InvalidConductor):
        field_from_key(((11, 1),))


def test_compositum_rejects_p_dividing_the_degree(k7):
    with pytest.raises(DegreeDivisibleByP):
        is_p_rational_compositum(CompositumSpec(3, (k7,)), 3)
    with pytest.raises(DegreeDivisibleByP):
        is_p_rational_compositum(CompositumSpec(2, (2,)), 2)


def test_degree_32_field_is_5_rational():
    tri = is_p_rational_compositum(CompositumSpec(2, (6, 11, 14, 59, -1)), 5)
    assert tri.is_yes
    assert tri.details["subfields"] == 31


def test_compositum_with_ramified_subfields():
    tri = is_p_rational_compositum(CompositumSpec(2, (2, 5)), 5)
    assert tri.is_unknown and tri.criterion == "subfields-undecided"
    assert tri.details["subfields"] == ["Q(sqrt(5))", "Q(sqrt(10))"]


def test_oracle_settles_undecided_subfields():
    spec = CompositumSpec(2, (2, 5))
    tri = is_p_rational_compositum(spec, 5, oracle=ScriptedOracle(False))
    assert tri.is_no and tri.criterion == "oracle"
    assert is_p_rational_compositum(spec, 5, oracle=ScriptedOracle(True)).is_yes
    assert is_p_rational_compositum(spec, 5, oracle=ScriptedOracle(True, fail=True)).is_unknown


def test_greedy_prefix_for_p5():
    assert greedy_search(5, 5, 200) == [2, 3, 11, 47, 97]
    assert list(GREEDY_GENERATORS[5][:5]) == [2, 3, 11, 47, 97]


def test_greedy_cap_reports_partial_sequence():
    with pytest.raises(CapExceeded) as info:
        greedy_search(6, 5, 200)
    assert info.value.partial == [2, 3, 11, 47, 97]
    with pytest.raises(ValueError):
        greedy_search(0, 5)


def test_greedy_final_imaginary():
    seq = greedy_search(2, 5, 200, final_imaginary=True)
    assert seq[:2] == [2, 3] and seq[-1] < 0


def test_growth_diagnostic():
    rows = growth_diagnostic([2, 3, -1])
    assert rows[0] == (2, 2, 0.25)
    assert rows[1][:2] == (3, 3)
    assert rows[1][2] == pytest.approx(math.log2(3) / 8)
    assert len(rows) == 2
    assert growth_diagnostic([2, 3, 11, 47, 97, 4691])[-1][2] == pytest.approx(math.log2(4691) / 128)


def test_verify_greedy_generators_prefix():
    assert verify_greedy_generators(5, prefix=5).is_yes
    with pytest.raises(KeyError):
        verify_greedy_generators(11)


@pytest.mark.slow
@pytest.mark.parametrize("p", [5, 41, 73])
def test_verify_greedy_generators_full_rows(p):
    assert verify_greedy_generators(p).is_yes


def test_certify_cubic_edges(k7):
    with pytest.raises(DegreeDivisibleByP):
        certify_cubic(k7, 3)
    tri, cert = certify_cubic(k7, 7)
    assert tri.is_unknown and tri.criterion == "ramified" and cert == {}


def test_certify_cubic_records_certificates(k7):
    tri, cert = certify_cubic(k7, 5)
    assert cert["class"]["verdict"] == "not-divisible"
    if tri.is_yes:
        assert tri.criterion == "class-and-regulator"
        assert cert["regulator"]["rank"] == 2


def test_strategy_summary_adds_up():
    fields = list(enumerate_cubic(100))
    verdicts, summary = strategy(fields, 5)
    assert summary.total == len(verdicts) == 16
    assert summary.certified + summary.refuted + summary.unknown == 16
    assert summary.oracle_sent == 0
    assert summary.speedup == 16


def test_strategy_sends_unknowns_to_the_oracle(k7):
    oracle = ScriptedOracle(False)
    verdicts, summary = strategy([k7], 7, oracle=oracle)
    assert oracle.calls == 1
    assert verdicts[0].verdict.is_no and verdicts[0].oracle_used
    assert summary.oracle_sent == summary.oracle_resolved == 1
    assert summary.unknown == 0


def test_strategy_keeps_unknown_when_the_oracle_fails(k7):
    verdicts, summary = strategy([k7], 7, oracle=ScriptedOracle(True, fail=True))
    assert verdicts[0].verdict.is_unknown
    assert summary.unknown == 1 and summary.oracle_resolved == 0


def test_field_verdict_json():
    v = FieldVerdict("x^2 - 2", 5, Tri.yes("class-and-unit"), {"h": 1})
    data = json.loads(v.to_json())
    assert data == {
        "poly": "x^2 - 2",
        "p": 5,
        "verdict": "yes",
        "certificate": {"criterion": "class-and-unit", "h": 1},
        "oracle_used": False,
    }
