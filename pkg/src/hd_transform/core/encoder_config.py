"""
Encoder parameters as a flat key-value mapping.

Keys: type, a, b, lambda, dim, seed, tau, epsilon, n_cells, sizes, mode, anchor_origin.
type is one of interval, sigmoid, periodic, discrete; epsilon > 0 wraps the encoder in
epsilon mixing. Values may be strings (as read from a config file) or numbers.
"""

from __future__ import annotations

from typing import Any, Mapping

from hd_transform.core.encodings import (
    DiscreteTripleEncoder,
    Domain1D,
    Encoder,
    EncoderConfigError,
    EpsilonMixedEncoder,
    IntervalStepEncoder,
    PeriodicEncoder,
    SigmoidEncoder,
)

ENCODER_TYPES = ("interval", "sigmoid", "periodic", "discrete")


def _get(cfg: Mapping[str, Any], key: str, parse: type, default: Any = None) -> Any:
    raw = cfg.get(key, default)
    if raw is None:
        raise EncoderConfigError(f"encoder config is missing {key!r}")
    if parse is int and isinstance(raw, str):
        raw = raw.strip()
    try:
        value = parse(raw)
    except (TypeError, ValueError) as exc:
        raise EncoderConfigError(f"invalid {parse.__name__} for {key}: {raw!r}") from exc
    if parse is int and isinstance(raw, float) and raw != value:
        raise EncoderConfigError(f"invalid int for {key}: {raw!r}")
    return value


def _optional_float(cfg: Mapping[str, Any], key: str) -> float | None:
    raw = cfg.get(key)
    if raw is None or raw == "":
        return None
    return _get(cfg, key, float)


def _sizes(raw: Any) -> tuple[int, int, int]:
    if isinstance(raw, str):
        parts = [p for p in raw.replace(" ", "").split(",") if p]
    else:
        parts = list(raw)
    try:
        sizes = tuple(int(p) for p in parts)
    except (TypeError, ValueError) as exc:
        raise EncoderConfigError(f"invalid sizes: {raw!r}") from exc
    if len(sizes) != 3:
        raise EncoderConfigError(f"sizes needs three integers, got {raw!r}")
    return sizes  # type: ignore[return-value]


def encoder_from_config(cfg: Mapping[str, Any]) -> Encoder:
    kind = str(cfg.get("type", "interval"))
    if kind not in ENCODER_TYPES:
        raise EncoderConfigError(f"encoder type must be one of {ENCODER_TYPES}, got {kind!r}")
    dim = _get(cfg, "dim", int)
    seed = _get(cfg, "seed", int, 0)

    enc: Encoder
    if kind == "discrete":
        enc = DiscreteTripleEncoder(
            _sizes(cfg.get("sizes", "2,2,2")), dim, seed, str(cfg.get("mode", "sum"))
        )
    else:
        domain = Domain1D(_get(cfg, "a", float, 0.0), _get(cfg, "b", float, 1.0))
        if kind == "periodic":
            enc = PeriodicEncoder(domain, _get(cfg, "n_cells", int), dim, seed)
        else:
            lam = _get(cfg, "lambda", float)
            origin = _optional_float(cfg, "anchor_origin")
            if kind == "interval":
                enc = IntervalStepEncoder(domain, lam, dim, seed, origin)
            else:
                enc = SigmoidEncoder(domain, lam, dim, seed, origin, _optional_float(cfg, "tau"))

    epsilon = _optional_float(cfg, "epsilon") or 0.0
    if epsilon:
        enc = EpsilonMixedEncoder(enc, epsilon)
    return enc


def encoder_to_config(enc: Encoder) -> dict[str, Any]:
    """Inverse of encoder_from_config."""
    out: dict[str, Any] = {}
    if isinstance(enc, EpsilonMixedEncoder):
        out["epsilon"] = enc.epsilon
        enc = enc.base
    out["dim"] = enc.dim
    out["seed"] = enc.seed
    if isinstance(enc, DiscreteTripleEncoder):
        out.update(type="discrete", sizes=",".join(str(s) for s in enc.sizes), mode=enc.mode)
        return out
    if isinstance(enc, PeriodicEncoder):
        out.update(type="periodic", a=enc.domain.a, b=enc.domain.b, n_cells=enc.n_cells)
        return out
    if isinstance(enc, (IntervalStepEncoder, SigmoidEncoder)):
        out.update(
            type="sigmoid" if isinstance(enc, SigmoidEncoder) else "interval",
            a=enc.domain.a,
            b=enc.domain.b,
            anchor_origin=enc.anchor_origin,
        )
        out["lambda"] = enc.length_scale
        if isinstance(enc, SigmoidEncoder):
            out["tau"] = enc.tau
        return out
    raise EncoderConfigError(f"{type(enc).__name__} has no flat config form")
