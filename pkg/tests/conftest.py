"""
Pytest configuration and shared fixtures
"""
import os
import sys

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from hd_transform.core.encodings import Domain1D, IntervalStepEncoder, SigmoidEncoder  # noqa: E402
from hd_transform.core.normalization import normalize_encoder  # noqa: E402


@pytest.fixture
def clean_env(monkeypatch):
    """Remove environment variables the CLI reads"""
    for key in ("HDT_LOG_LEVEL", "HDT_OUTPUT_DIR"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def unit_domain():
    return Domain1D(0.0, 1.0)


@pytest.fixture
def step_encoder(unit_domain):
    """Small interval step encoder: lambda 1/4, D = 4096"""
    return IntervalStepEncoder(unit_domain, 0.25, 4096, 7)


@pytest.fixture
def sigmoid_encoder(unit_domain):
    return SigmoidEncoder(unit_domain, 0.25, 1024, 7)


@pytest.fixture
def normalized_step(step_encoder):
    return normalize_encoder(step_encoder)
