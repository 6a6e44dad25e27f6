import json

import pytest

import config
from PRational.__main__ import main
from PRational.core.runconfig import RunConfig
from PRational.plugins.density import checkpoint_path, experiment_spec
from PRational.plugins.family import scan_row
from PRational.stats.experiment import read_report


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def body(out):
    return [line for line in out.splitlines() if line and not line.startswith("#")]


def test_enumerate_cubic_fields(capsys):
    code, out = run(capsys, "enumerate", "--max-cond", "9")
    assert code == 0
    lines = body(out)
    assert len(lines) == 2
    assert lines[0].startswith("7\t")
    assert lines[1].startswith("9\t")


def test_enumerate_alias_and_multiquadratic(capsys):
    code, out = run(capsys, "enum", "--group", "2^2", "--d-max", "6")
    assert code == 0
    assert body(out) == ["2 3", "2 5", "3 5", "5 6"]


def test_enumerate_bound_below_seven_is_a_usage_error(capsys):
    assert main(["enumerate", "--max-cond", "5"]) == 2
    assert main(["enumerate"]) == 2


def test_unknown_flag_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as info:
        main(["enumerate", "--max-cond", "9", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["density", "--primes", "3"])
    assert info.value.code == 2


def test_desk_scale_limits(capsys):
    assert main(["enumerate", "--max-cond", "200000"]) == 2
    assert main(["family", "--a-max", "5001", "--no-certify"]) == 2


def test_density_report(capsys):
    code, out = run(capsys, "density", "--primes", "5,7", "--max-cond", "100")
    assert code == 0
    header = json.loads(out.splitlines()[0][2:])
    assert header["command"] == "density" and "jobs" not in header
    r5, r7 = read_report(out)
    assert r5.total == r7.total == 16
    assert r5.events_unresolved == r7.events_unresolved == 0


def test_density_output_does_not_depend_on_jobs_or_resume(capsys, monkeypatch):
    monkeypatch.setattr(config, "CHECKPOINT_EVERY", 4)
    args = ["density", "--group", "2^2", "--primes", "5,11", "--d-max", "20"]
    _, single = run(capsys, *args, "--jobs", "1")
    _, pooled = run(capsys, *args, "--jobs", "2")
    _, resumed = run(capsys, *args, "--resume")
    assert single == pooled == resumed


def test_corrupt_checkpoint_exits_with_4(capsys):
    args = ["density", "--primes", "5", "--max-cond", "50"]
    spec = experiment_spec(RunConfig(command="density", group="3^1", primes=[5], max_cond=50))
    path = checkpoint_path(spec)
    with open(path, "w") as f:
        f.write("{broken\n")
    assert main(args + ["--resume"]) == 4


def test_density_with_missing_oracle_exits_with_3(capsys):
    assert main(["density", "--primes", "5", "--max-cond", "50",
                 "--event", "reg", "--oracle-bin", "no-such-gp-binary"]) == 3


def test_density_rejects_event_outside_group(capsys):
    assert main(["density", "--primes", "5", "--max-cond", "50", "--event", "kuroda3"]) == 2


def test_prational_on_small_conductors(capsys):
    code, out = run(capsys, "prational", "--primes", "5", "--max-cond", "100", "--no-oracle")
    assert code == 0
    rows = [json.loads(line) for line in body(out)]
    assert len(rows) == 16
    assert all(set(r) == {"poly", "p", "verdict", "certificate", "oracle_used"} for r in rows)
    assert not any(r["oracle_used"] for r in rows)
    summary = json.loads(out.splitlines()[-1][2:])
    assert summary["p"] == 5 and summary["summary"]["total"] == 16


def test_prational_reads_enumerated_fields(capsys, tmp_path):
    listing = tmp_path / "fields.tsv"
    assert main(["enumerate", "--max-cond", "13", "--out", str(listing)]) == 0
    capsys.readouterr()
    code, out = run(capsys, "check", "--primes", "5", "--fields", str(listing), "--no-oracle")
    assert code == 0
    assert [json.loads(line)["poly"] for line in body(out)] == [
        "x^3 + x^2 - 2*x - 1", "x^3 - 3*x - 1", "x^3 + x^2 - 4*x + 1"]


def test_prational_needs_fields(capsys):
    assert main(["prational", "--primes", "5", "--no-oracle"]) == 2
    assert main(["prational", "--max-cond", "50", "--no-oracle"]) == 2


def test_verify_greedy_generators_prefix(capsys):
    code, out = run(capsys, "prational", "--verify-table1", "5", "--prefix", "5", "--no-oracle")
    assert code == 0
    row = json.loads(body(out)[0])
    assert row["verdict"] == "yes" and row["generators"] == [2, 3, 11, 47, 97]
    _, again = run(capsys, "prational", "--verify-greedy", "5", "--prefix", "5", "--no-oracle")
    assert body(again) == body(out)
    assert main(["prational", "--verify-table1", "11"]) == 2


def test_greedy(capsys):
    code, out = run(capsys, "greedy", "--primes", "5", "--t", "5", "--d-max", "200")
    assert code == 0
    row = json.loads(body(out)[0])
    assert row["status"] == "complete" and row["generators"] == [2, 3, 11, 47, 97]
    assert row["growth"][0] == [2, 2, 0.25]
    _, out = run(capsys, "greedy", "--primes", "5", "--t", "6", "--d-max", "200")
    row = json.loads(body(out)[0])
    assert row["status"] == "cap-exceeded" and row["generators"] == [2, 3, 11, 47, 97]


def test_family_scan(capsys):
    code, out = run(capsys, "family", "--a-max", "25", "--no-certify")
    assert code == 0
    rows = {r["a"]: r for r in map(json.loads, body(out))}
    assert sorted(rows) == list(range(1, 26, 2))
    assert all(r["s"] == (a - 3) // 2 and r["rank"] == 2 for a, r in rows.items())
    assert rows[1]["m"] == 7 and rows[1]["gate"] == "ok"
    assert rows[3]["gate"] == "m-not-prime"
    assert rows[1]["residue_condition"] is False and rows[3]["residue_condition"] is None


def test_family_rows_at_the_excluded_residues():
    row = scan_row(45, certify=False)
    assert row["s"] == 21 and row["m"] == 513 and row["gate"] == "m-not-prime"
    row = scan_row(49, certify=False)
    assert row["s"] == 23 and row["m"] == 607 and row["gate"] == "ok"
    assert isinstance(row["residue_condition"], bool)
