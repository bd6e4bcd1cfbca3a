"""Precision-contract validation."""

import pytest

from hardyz import PrecisionConfig
from hardyz.errors import ConfigError


def test_defaults_valid():
    cfg = PrecisionConfig()
    assert cfg.target_abs_tol <= 1e-6
    assert cfg.max_series_terms >= 8


@pytest.mark.parametrize(
    "kwargs",
    [
        {"target_abs_tol": 0.0},
        {"target_abs_tol": 1e-5},
        {"target_rel_tol": -1e-9},
        {"target_rel_tol": 2e-6},
        {"max_series_terms": 7},
    ],
)
def test_invariants_enforced(kwargs):
    with pytest.raises(ConfigError):
        PrecisionConfig(**kwargs)


def test_cache_key_stable_and_distinct():
    a = PrecisionConfig()
    b = PrecisionConfig(target_abs_tol=1e-9)
    assert a.cache_key() == PrecisionConfig().cache_key()
    assert a.cache_key() != b.cache_key()
