import argparse

import pytest

import config
from PRational.core.runconfig import DESK_LIMITS, RunConfig, UsageError, add_flags, emit
from PRational.utils.formatters import format_ratio, get_readable_time, parse_group, parse_primes
from strings import get_command, get_string


def test_parse_primes():
    assert parse_primes("5,7,11") == [5, 7, 11]
    for bad in ("3,5", "5,9", "", "five"):
        with pytest.raises(ValueError):
            parse_primes(bad)


def test_parse_group():
    assert parse_group("3^2") == (3, 2)
    for bad in ("5^1", "3^0", "3"):
        with pytest.raises(ValueError):
            parse_group(bad)


def test_readable_time_and_ratio():
    assert get_readable_time(59) == "59s"
    assert get_readable_time(3725) == "1h:2m:5s"
    assert get_readable_time(90061) == "1days, 1h:1m:1s"
    assert format_ratio(3, 1268) == "3/1268 ≈ 0.00237"
    assert format_ratio(0, 0) == "0/0"


def test_run_config_from_args():
    parser = argparse.ArgumentParser()
    add_flags(parser, "group", "primes", "max-cond", "jobs", "seed", "trials")
    parser.add_argument("--fields")
    run = RunConfig.from_args(parser.parse_args(["--primes", "5,7", "--max-cond", "500", "--jobs", "3"]))
    assert run.primes == [5, 7] and run.max_cond == 500 and run.jobs == 3
    assert run.group == "3^1"
    assert run.extra == {"trials": config.CLASS_TRIALS, "fields": None}


def test_desk_scale_limit_and_full_scale():
    limit = DESK_LIMITS["max_cond"]
    with pytest.raises(UsageError, match="--scale full"):
        RunConfig("enumerate", max_cond=limit + 1).validate()
    RunConfig("enumerate", max_cond=limit + 1, scale="full").validate()
    with pytest.raises(UsageError):
        RunConfig("family", extra={"a_max": DESK_LIMITS["a_max"] + 2}).validate()
    with pytest.raises(UsageError):
        RunConfig("density", jobs=0).validate()


def test_apply_sets_seed_and_jobs(monkeypatch):
    monkeypatch.setenv("SEED", "0")
    monkeypatch.setenv("JOBS", "1")
    monkeypatch.setattr(config, "SEED", 0)
    RunConfig("density", seed=42, jobs=2).apply()
    assert config.SEED == 42 and config.JOBS == 2


def test_header_leaves_out_execution_flags():
    header = RunConfig("density", group="3^1", primes=[5], jobs=4, resume=True, out="x.csv").header("abc")
    assert header["revision"] == "abc"
    assert not {"jobs", "resume", "out"} & set(header)


def test_emit(tmp_path, capsys):
    emit("a\nb\n", None)
    assert capsys.readouterr().out == "a\nb\n"
    target = tmp_path / "sub" / "out.txt"
    emit("a\n", str(target))
    assert target.read_text() == "a\n"


def test_strings():
    assert get_command("ENUMERATE_COMMAND") == ["enumerate", "enum"]
    _ = get_string("en")
    assert "{0}" in _["usage_error"]
    assert _["scale_limit"].format("--max-cond", 1, 0).endswith("--scale full to run it.")
