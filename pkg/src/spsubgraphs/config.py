"""Run configuration shared by the command line and the verification suite."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

PRECISION_ENV = "SPSUBGRAPHS_PRECISION"
FORMATS = ("json", "csv")


class ConfigError(ValueError):
    pass


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 50
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{PRECISION_ENV}={raw!r} is not an integer") from exc


@dataclass(frozen=True)
class RunConfig:
    precision_digits: int = field(default_factory=default_precision)
    series_order: int = 30
    oracle_n_cap: int = 6
    tolerances: dict = field(default_factory=dict)  # check name -> tolerance override
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        if self.precision_digits < 30:
            raise ConfigError(f"precision_digits must be >= 30, got {self.precision_digits}")
        if self.series_order < 4:
            raise ConfigError(f"series_order must be >= 4, got {self.series_order}")
        if not 1 <= self.oracle_n_cap <= 8:
            raise ConfigError(f"oracle_n_cap must lie in 1..8, got {self.oracle_n_cap}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")
        for k, v in self.tolerances.items():
            if not v >= 0:
                raise ConfigError(f"tolerance for {k} must be non-negative")

    def tolerance(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)


def parse_tolerances(items) -> dict:
    """``name=value`` strings to a tolerance map."""
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"tolerance override {item!r} is not name=value")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise ConfigError(f"tolerance override {item!r}: {value!r} is not a number") from exc
    return out
