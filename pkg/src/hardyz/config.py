"""Precision contract shared by all evaluation routines."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class PrecisionConfig:
    """Absolute/relative tolerance targets and the series-term budget.

    ``target_abs_tol`` bounds the estimated absolute error a function
    evaluation may report while still succeeding; routines raise
    AccuracyError instead of silently returning a value whose internal
    estimate exceeds it.  ``max_series_terms`` caps correction-term counts
    (Bernoulli tails, Laurent truncation); it is a budget, not a target.
    """

    target_abs_tol: float = 1e-8
    target_rel_tol: float = 1e-8
    max_series_terms: int = 16

    def __post_init__(self):
        if not (0.0 < self.target_abs_tol <= 1e-6):
            raise ConfigError(
                "config", "PrecisionConfig", f"target_abs_tol must be in (0, 1e-6], got {self.target_abs_tol}"
            )
        if not (0.0 < self.target_rel_tol <= 1e-6):
            raise ConfigError(
                "config", "PrecisionConfig", f"target_rel_tol must be in (0, 1e-6], got {self.target_rel_tol}"
            )
        if self.max_series_terms < 8:
            raise ConfigError(
                "config", "PrecisionConfig", f"max_series_terms must be >= 8, got {self.max_series_terms}"
            )

    def cache_key(self) -> str:
        raw = f"{self.target_abs_tol!r}|{self.target_rel_tol!r}|{self.max_series_terms}"
        return hashlib.sha1(raw.encode()).hexdigest()[:12]

    def as_dict(self) -> dict:
        return {
            "target_abs_tol": self.target_abs_tol,
            "target_rel_tol": self.target_rel_tol,
            "max_series_terms": self.max_series_terms,
        }


DEFAULT_CONFIG = PrecisionConfig()
