import io
import json
import logging
import sys

import pytest

from dipoledyn import config
from dipoledyn.config import RunConfig, config_from_dict, load_config, merge_flags
from dipoledyn.errors import ConfigError


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("DIPOLEDYN_THREADS", "3")
    assert config.thread_cap() == 3
    monkeypatch.delenv("DIPOLEDYN_THREADS")
    assert config.thread_cap() >= 1


@pytest.mark.parametrize("raw", ["0", "-2", "many"])
def test_thread_cap_rejects_bad_values(monkeypatch, raw):
    monkeypatch.setenv("DIPOLEDYN_THREADS", raw)
    with pytest.raises(ConfigError):
        config.thread_cap()


def test_defaults():
    cfg = load_config()
    assert cfg == RunConfig()
    assert cfg.laser.rabi == 0.25
    assert cfg.integrator.method == "rk45"
    assert cfg.sweep.points == 200
    assert cfg.scenario.k0r is None


def test_config_from_dict_normalizes_keys():
    cfg = config_from_dict({"Laser": {"Detuning Ratio": 1.1}, "sweep": {"points": 10.0}})
    assert cfg.laser.detuning_ratio == 1.1
    assert cfg.sweep.points == 10
    assert isinstance(cfg.sweep.points, int)


@pytest.mark.parametrize(
    "doc",
    [
        {"lasers": {}},
        {"laser": {"power": 1.0}},
        {"laser": {"rabi": "fast"}},
        {"sweep": {"points": 2.5}},
        {"laser": [1, 2]},
        [],
    ],
)
def test_config_from_dict_rejects(doc):
    with pytest.raises(ConfigError):
        config_from_dict(doc)


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(bad)


def test_merge_flags_ignores_unset_and_unknown():
    cfg = RunConfig()
    merged = merge_flags(cfg, {"rabi": None, "command": "sweep", "handler": object(), "points": 7})
    assert merged.laser.rabi == 0.25
    assert merged.sweep.points == 7


def test_file_then_flags_equals_flags(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"sweep": {"kind": "shift", "points": 5}, "laser": {"rabi": 0.2}}), encoding="utf-8")
    from_file = merge_flags(load_config(path), {"rabi": 0.3})
    from_flags = merge_flags(RunConfig(), {"kind": "shift", "points": 5, "rabi": 0.3})
    assert from_file == from_flags


def test_configure_logging():
    logger = config.configure_logging("debug")
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1
    config.configure_logging("WARNING")
    assert len(logger.handlers) == 1
    assert logger.level == logging.WARNING
    with pytest.raises(ConfigError):
        config.configure_logging("chatty")


def test_configure_logging_after_stderr_was_closed(monkeypatch):
    first = io.StringIO()
    monkeypatch.setattr(sys, "stderr", first)
    config.configure_logging("info")
    first.close()
    second = io.StringIO()
    monkeypatch.setattr(sys, "stderr", second)
    logger = config.configure_logging("info")
    logging.getLogger("dipoledyn.gates").info("after swap")
    assert len(logger.handlers) == 1
    assert "after swap" in second.getvalue()
    config.configure_logging("WARNING")


def test_config_leaves_dotenv_to_the_entry_points():
    assert not hasattr(config, "load_dotenv")
