import shutil

import pytest

import config


@pytest.fixture(autouse=True)
def workdirs(tmp_path, monkeypatch):
    """Reports, checkpoints and transcripts go to a per-test directory."""
    for name in ("OUTPUT_DIR", "CHECKPOINT_DIR", "TRANSCRIPT_DIR"):
        path = tmp_path / name.split("_")[0].lower()
        path.mkdir()
        monkeypatch.setattr(config, name, str(path))
    monkeypatch.setattr(config, "JOBS", 1)
    return tmp_path


@pytest.fixture
def gp():
    if shutil.which(config.ORACLE_BIN) is None:
        pytest.skip(f"{config.ORACLE_BIN} not installed")
    from PRational.platforms import PariAPI

    return PariAPI(binary=config.ORACLE_BIN, transcript_dir=config.TRANSCRIPT_DIR)
