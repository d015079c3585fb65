from __future__ import annotations

import pytest

from hd_transform.config import ConfigError, load_run_config
from hd_transform.core.config import parse_value, validate


@pytest.mark.parametrize(
    "key, raw, expected",
    [
        ("dim", " 64 ", 64),
        ("lambda", "0.125", 0.125),
        ("dims", "1, 2,", [1, 2]),
        ("x_primes", "", []),
        ("svg", "Yes", True),
        ("rescale", "off", False),
        ("encoder", " sigmoid ", "sigmoid"),
        ("dim", 12, 12),
    ],
)
def test_parse_value(key, raw, expected):
    assert parse_value(key, raw) == (True, expected)


@pytest.mark.parametrize(
    "key, raw, message",
    [
        ("dim", "1.5", "dim must be int, got '1.5'"),
        ("lambdas", "0.1,x", "lambdas must be floats"),
        ("svg", "maybe", "svg must be a boolean"),
        ("colour", "red", "unknown config key: colour"),
    ],
)
def test_parse_value_errors(key, raw, message):
    ok, err = parse_value(key, raw)
    assert not ok
    assert message in err


@pytest.mark.parametrize(
    "command, overrides, message",
    [
        ("normalize", {"lambda": "0"}, "lambda must be > 0"),
        ("normalize", {"lambda": "2"}, "exceeds the domain length"),
        ("normalize", {"dim": "0"}, "dim must be >= 1"),
        ("normalize", {"grid_size": "1"}, "grid_size must be >= 2"),
        ("normalize", {"tolerance": "-0.1"}, "tolerance must be >= 0"),
        ("normalize", {"encoder": "gauss"}, "encoder must be one of"),
        ("normalize", {"log_level": "loud"}, "log_level must be one of"),
        ("normalize", {"threads": "-1"}, "threads must be >= 0"),
        ("derivatives", {"tau": "-1"}, "tau must be >= 0"),
        ("derivatives", {"component": "5"}, "component must be < dim (1)"),
        ("recover", {"epsilon": "1.5"}, "epsilon must lie in [0, 1]"),
        ("recover", {"dims": "100,0"}, "dims must all be >= 1"),
        ("recover", {"lambdas": "0.1,0"}, "lambdas must all be > 0"),
        ("recover", {"mode": "both"}, "mode must be one of"),
        ("recover", {"preset": "tan"}, "preset must be one of"),
        ("solve-ode", {"ode": "custom"}, "ode=custom needs coeffs"),
        ("solve-ode", {"ode": "damped", "beta": "20"}, "damped preset needs 0 <= beta < k"),
        ("solve-ode", {"ridges": "1,-1"}, "ridges must all be >= 0"),
        ("solve-ode", {"k": "0"}, "k must be > 0"),
        ("solve-ode", {"bc_weight": "0"}, "bc_weight must be > 0"),
        ("solve-fredholm", {"lambda_f": "-1"}, "lambda_f must be > 0"),
        ("fuzzy-baseline", {"fuzzy_nodes": "1"}, "fuzzy_nodes must be >= 2"),
    ],
)
def test_invalid_settings(command, overrides, message):
    with pytest.raises(ConfigError) as exc:
        load_run_config(command, overrides=overrides)
    assert message in str(exc.value)


def test_periodic_encoder_may_exceed_the_domain_length():
    cfg = load_run_config("normalize", overrides={"encoder": "periodic", "lambda": "2"})
    assert cfg["lambda"] == 2.0


def test_zero_means_derived_for_step_settings():
    cfg = load_run_config("solve-ode", overrides={"fd_step": "0", "ridge": "0"})
    assert cfg["fd_step"] == 0.0
    assert cfg["ridge"] == 0.0


def test_validate_rejects_non_dict_and_unknown_keys():
    assert validate([]) == (False, "config must be a dict")  # type: ignore[arg-type]
    assert validate({"a": 0.0, "b": 1.0, "bogus": 1}) == (False, "unknown config key: bogus")
