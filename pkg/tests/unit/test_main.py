from __future__ import annotations

import pytest

import hd_transform.main as m
from hd_transform.core.errors import NumericalError


def test_parser_requires_subcommand():
    p = m.build_parser()
    with pytest.raises(SystemExit):
        p.parse_args([])


def test_version_flag_exits(monkeypatch):
    # argparse --version triggers SystemExit(0)
    monkeypatch.setattr(m, "get_version_string", lambda: "1.0.0")
    with pytest.raises(SystemExit) as exc:
        m.main(["--version"])
    assert exc.value.code == 0


def test_flags_become_overrides():
    args = m.build_parser().parse_args(
        ["recover", "--dim", "64", "--lambda", "0.1", "--svg", "--set", "seeds=3", "--out", "x"]
    )
    assert m._overrides(args) == {
        "seeds": "3",
        "dim": "64",
        "lambda": "0.1",
        "output": "x",
        "svg": "true",
    }


def test_flags_beat_set_assignments():
    args = m.build_parser().parse_args(["normalize", "--set", "dim=8", "--dim", "16"])
    assert m._overrides(args)["dim"] == "16"


@pytest.mark.parametrize(
    "exc, code",
    [
        (NumericalError("diverged"), m.EXIT_NUMERICAL),
        (OSError("disk full"), m.EXIT_IO),
        (ValueError("bad table"), m.EXIT_CONFIG),
    ],
)
def test_failures_map_to_exit_codes(monkeypatch, clean_env, tmp_path, exc, code):
    def boom(cfg):
        raise exc

    monkeypatch.setattr(m, "run", boom)
    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--out", str(tmp_path)])
    assert info.value.code == code


def test_config_error_exits_with_2(clean_env, tmp_path):
    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--set", "dim=lots", "--out", str(tmp_path)])
    assert info.value.code == m.EXIT_CONFIG


def test_missing_config_file_exits_with_2(clean_env, tmp_path):
    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--config", str(tmp_path / "none.env")])
    assert info.value.code == m.EXIT_CONFIG


def test_normalize_run_and_rerun_from_its_csv(clean_env, tmp_path):
    out = tmp_path / "out"
    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--out", str(out), "--lambda", "0.2", "--threads", "1"])
    assert info.value.code == m.EXIT_OK

    first = (out / "normalize-n.csv").read_bytes()
    assert b"#lambda=0.2\n" in first
    assert b"#info.residual=" in first

    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--config", str(out / "normalize-n.csv")])
    assert info.value.code == m.EXIT_OK
    assert (out / "normalize-n.csv").read_bytes() == first


def test_output_dir_from_env(clean_env, monkeypatch, tmp_path):
    monkeypatch.setenv("HDT_OUTPUT_DIR", str(tmp_path / "env-out"))
    with pytest.raises(SystemExit) as info:
        m.main(["normalize", "--set", "iterations=1"])
    assert info.value.code == m.EXIT_OK
    assert (tmp_path / "env-out" / "normalize-tilde-one.csv").is_file()
