import json

import pytest

import config
from PRational.stats.experiment import (
    CLASS_DIV,
    KURODA3,
    SUBFIELD_REG_DIV,
    Checkpoint,
    DensityReport,
    ExperimentSpec,
    read_report,
    run_density_experiment,
    stream_items,
    write_report,
)
from PRational.utils.exceptions import CheckpointCorrupt


@pytest.fixture
def small_batches(monkeypatch):
    monkeypatch.setattr(config, "CHECKPOINT_EVERY", 5)


def test_spec_rejects_events_outside_the_group():
    with pytest.raises(ValueError):
        ExperimentSpec("3^1", [5], 100, KURODA3).validate()
    with pytest.raises(ValueError):
        ExperimentSpec("2^3", [5], 30, CLASS_DIV).validate()
    ExperimentSpec("3^2", [7], 100, KURODA3).validate()


def test_checkpoint_keeps_the_last_line(tmp_path):
    ckpt = Checkpoint(str(tmp_path / "run.jsonl"))
    assert ckpt.load() is None
    ckpt.write({"cursor": 5, "counters": {}, "seed": 1})
    ckpt.write({"cursor": 10, "counters": {}, "seed": 1})
    assert ckpt.load()["cursor"] == 10


def test_checkpoint_corrupt(tmp_path):
    path = tmp_path / "run.jsonl"
    path.write_text('{"cursor": 5, "counters": {}, "seed": 1}\n{"cursor": 1')
    with pytest.raises(CheckpointCorrupt):
        Checkpoint(str(path)).load()
    path.write_text(json.dumps({"cursor": 5}) + "\n")
    with pytest.raises(CheckpointCorrupt):
        Checkpoint(str(path)).load()


def test_report_round_trip(tmp_path):
    report = DensityReport("2^3", 5, 60, 100, 70, 9, 0.79)
    path = tmp_path / "report.csv"
    text = write_report([report], str(path), header={"command": "density"})
    assert text.startswith("# {")
    assert path.read_text() == text
    (back,) = read_report(text)
    assert back == report
    assert back.stat_density == report.stat_density
    with pytest.raises(ValueError):
        read_report("group,p\n")


def test_class_run_on_small_conductors(small_batches):
    spec = ExperimentSpec("3^1", [5, 7], 100, CLASS_DIV)
    r5, r7 = run_density_experiment(spec)
    assert r5.total == r7.total == 16
    assert r5.events_confirmed == r7.events_confirmed == 0
    # h is 1 or 3 up to conductor 100, including the five fields where 7 ramifies
    assert r5.events_unresolved == r7.events_unresolved == 0
    assert r5.conj_density == pytest.approx(0.00167, abs=1e-5)


def test_resume_matches_an_uninterrupted_run(tmp_path, small_batches):
    spec = ExperimentSpec("2^2", [5, 11], 30, SUBFIELD_REG_DIV)
    full = run_density_experiment(spec, str(tmp_path / "full.jsonl"))

    partial = str(tmp_path / "partial.jsonl")
    head = list(stream_items(spec))[:10]
    run_density_experiment(spec, partial, items=head)
    assert Checkpoint(partial).load()["cursor"] == 10
    resumed = run_density_experiment(spec, partial, resume=True)
    assert resumed == full


def test_resume_refuses_a_foreign_checkpoint(tmp_path, small_batches):
    path = str(tmp_path / "run.jsonl")
    run_density_experiment(ExperimentSpec("2^2", [5], 20, SUBFIELD_REG_DIV), path)
    with pytest.raises(CheckpointCorrupt):
        run_density_experiment(ExperimentSpec("2^2", [5], 25, SUBFIELD_REG_DIV), path, resume=True)


def test_fresh_run_discards_old_checkpoint(tmp_path, small_batches):
    path = tmp_path / "run.jsonl"
    path.write_text("not json\n")
    spec = ExperimentSpec("2^2", [5], 20, SUBFIELD_REG_DIV)
    run_density_experiment(spec, str(path))
    assert Checkpoint(str(path)).load()["bound"] == 20


@pytest.mark.slow
def test_subfield_regulator_density_at_desk_scale():
    spec = ExperimentSpec("2^3", [5, 11], 60, SUBFIELD_REG_DIV)
    for report in run_density_experiment(spec):
        n = report.total
        sigma = (report.conj_density * (1 - report.conj_density) / n) ** 0.5
        assert abs(float(report.stat_density) - report.conj_density) < 3 * sigma + report.events_unresolved / n
