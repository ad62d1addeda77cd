"""Run configuration: grids, tolerances, battery, output routing.

Config values come from (lowest to highest precedence) built-in defaults,
a config file (JSON object or ``key = value`` lines) pointed to by
``--config`` or the GBOEHM_CONFIG environment variable, and CLI flags.
Every report embeds the resolved snapshot so its numbers are traceable to
grid and tolerance settings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace

from .grid import GridSpec
from .presets import DEFAULT_BATTERY

__all__ = ["RunConfig", "parse_grid_arg", "load_config_file"]


def parse_grid_arg(s: str) -> tuple[float, float, int]:
    """Parse ``lo:hi:n`` (e.g. ``-30:30:6001``)."""
    parts = s.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected lo:hi:n, got {s!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


@dataclass(frozen=True)
class RunConfig:
    grid: tuple[float, float, int] = (-30.0, 30.0, 6001)
    t_grid: tuple[float, float, int] = (-10.0, 10.0, 2001)
    eps_quot: float = 1e-6
    eps_conv: float = 1e-3
    tol_conv: float = 1e-6
    tol_assoc: float = 1e-6
    c_min: float = 0.5
    tail_cutoff: float = 1e-12
    young_slack: float = 1e-6
    p1_tol: float = 1e-9
    overflow_tol: float = 1e-4
    nmax: int = 32
    check_window: int = 8
    battery: tuple[str, ...] = DEFAULT_BATTERY
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self) -> None:
        for name in ("eps_quot", "eps_conv", "tol_conv", "tol_assoc", "c_min",
                     "tail_cutoff", "young_slack", "p1_tol", "overflow_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")
        if not self.battery:
            raise ValueError("battery must be non-empty")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output_format must be csv or json, not {self.output_format!r}")

    def grid_spec(self) -> GridSpec:
        lo, hi, n = self.grid
        return GridSpec(lo, hi, n)

    def t_grid_spec(self) -> GridSpec:
        lo, hi, n = self.t_grid
        return GridSpec(lo, hi, n)

    def snapshot(self) -> dict:
        return {
            "grid": list(self.grid),
            "t_grid": list(self.t_grid),
            "tolerances": {
                "eps_quot": self.eps_quot,
                "eps_conv": self.eps_conv,
                "tol_conv": self.tol_conv,
                "tol_assoc": self.tol_assoc,
                "c_min": self.c_min,
                "tail_cutoff": self.tail_cutoff,
                "young_slack": self.young_slack,
                "p1_tol": self.p1_tol,
                "overflow_tol": self.overflow_tol,
            },
            "nmax": self.nmax,
            "check_window": self.check_window,
            "battery": list(self.battery),
        }

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


_FIELD_NAMES = {f.name for f in fields(RunConfig)}


def _coerce(key: str, value):
    if key in ("grid", "t_grid"):
        if isinstance(value, str):
            return parse_grid_arg(value)
        lo, hi, n = value
        return (float(lo), float(hi), int(n))
    if key == "battery":
        if isinstance(value, str):
            return tuple(v.strip() for v in value.split(",") if v.strip())
        return tuple(value)
    if key in ("nmax", "check_window"):
        return int(value)
    if key in ("output_format", "output_path"):
        return str(value)
    return float(value)


def load_config_file(path: str) -> dict:
    """Read a config file; returns a dict of RunConfig field overrides."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {line!r} (expected key = value)")
            k, v = line.split("=", 1)
            raw[k.strip()] = v.strip()
    out = {}
    for k, v in raw.items():
        if k not in _FIELD_NAMES:
            raise ValueError(f"unknown config key {k!r}")
        out[k] = _coerce(k, v)
    return out


def base_config(config_path: str | None = None) -> tuple[RunConfig, set[str]]:
    """Defaults merged with a config file (explicit keys reported)."""
    overrides: dict = {}
    path = config_path or os.environ.get("GBOEHM_CONFIG")
    if path:
        overrides = load_config_file(path)
    return RunConfig().with_overrides(**overrides), set(overrides)
