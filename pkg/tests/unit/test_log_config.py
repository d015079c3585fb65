from __future__ import annotations

import logging

import pytest

from hd_transform.core.log_config import (
    LOG_LEVEL_ENV,
    apply_log_level,
    level_value,
    resolve_log_level,
)


@pytest.fixture
def restore_root_level():
    root = logging.getLogger()
    before = root.level
    yield
    root.setLevel(before)


def test_default_is_info(clean_env):
    assert resolve_log_level(None) == logging.INFO
    assert resolve_log_level({"log_level": ""}) == logging.INFO


def test_env_is_used_when_config_is_silent(clean_env, monkeypatch):
    monkeypatch.setenv(LOG_LEVEL_ENV, "debug")
    assert resolve_log_level({"log_level": ""}) == logging.DEBUG


def test_config_beats_env(clean_env, monkeypatch):
    monkeypatch.setenv(LOG_LEVEL_ENV, "DEBUG")
    assert resolve_log_level({"log_level": "warning"}) == logging.WARNING


def test_explicit_environ_mapping():
    assert resolve_log_level({}, {LOG_LEVEL_ENV: "error"}) == logging.ERROR
    assert resolve_log_level({}, {}) == logging.INFO


def test_unknown_config_level_falls_through_to_env():
    assert resolve_log_level({"log_level": "nonsense"}, {LOG_LEVEL_ENV: "debug"}) == logging.DEBUG


@pytest.mark.parametrize(
    "raw, level",
    [("15", 15), (" error ", logging.ERROR), ("Critical", logging.CRITICAL), ("nonsense", None),
     ("", None), (None, None)],
)
def test_level_value(raw, level):
    assert level_value(raw) == level


def test_apply_sets_root_level(clean_env, restore_root_level):
    root = apply_log_level({"log_level": "ERROR"})
    assert root is logging.getLogger()
    assert root.level == logging.ERROR
