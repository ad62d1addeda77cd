"""Closed-form test functions and their grid sampling.

The preset battery supplies integrable functions with known closed forms:
one-sided exponential tails, a Gaussian, boxes, a triangle, and a scaled
right-sided box.  ``eval_preset`` returns exact pointwise values;
``sample`` produces a :class:`~gboehm.grid.GridFunction`, storing the
average of the one-sided limits wherever a jump lands exactly on a grid
node (that convention keeps trapezoid quadrature second-order across the
jump; the closed-form value at the jump itself is still what
``eval_preset`` reports).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, GridSpec

__all__ = [
    "ConfigurationError",
    "ResolutionWarning",
    "AnalyticPreset",
    "PRESET_KINDS",
    "eval_preset",
    "sample",
    "parse_preset",
    "DEFAULT_BATTERY",
]


class ConfigurationError(ValueError):
    """Unknown preset kind or malformed preset parameters."""


class ResolutionWarning(UserWarning):
    """Grid too coarse to resolve the preset's characteristic width."""


@dataclass(frozen=True)
class AnalyticPreset:
    """Named closed-form function: ``kind`` plus numeric parameters.

    kinds: exp_right (e^-x for x>=0), exp_left (e^x for x<=0),
    gaussian(sigma), box(a, b), triangle(half_width), scaled_box_right(n).
    """

    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in PRESET_KINDS:
            raise ConfigurationError(f"unknown preset kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        PRESET_KINDS[self.kind].validate(self.params)

    def name(self) -> str:
        if not self.params:
            return self.kind
        return self.kind + ":" + ":".join("%g" % p for p in self.params)


class _Kind:
    def __init__(self, n_params, validate=None):
        self.n_params = n_params
        self._validate = validate

    def validate(self, params):
        if len(params) != self.n_params:
            raise ConfigurationError(
                f"expected {self.n_params} parameter(s), got {len(params)}"
            )
        if self._validate:
            self._validate(params)


def _check_box(params):
    a, b = params
    if not a < b:
        raise ConfigurationError(f"box needs a < b, got [{a}, {b}]")


def _check_pos(params):
    if params[0] <= 0:
        raise ConfigurationError("parameter must be positive")


PRESET_KINDS = {
    "exp_right": _Kind(0),
    "exp_left": _Kind(0),
    "gaussian": _Kind(1, _check_pos),
    "box": _Kind(2, _check_box),
    "triangle": _Kind(1, _check_pos),
    "scaled_box_right": _Kind(1, _check_pos),
}


def eval_preset(p: AnalyticPreset, x):
    """Exact closed-form value(s) of the preset at ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if p.kind == "exp_right":
        v = np.where(x >= 0, np.exp(-np.minimum(x, 745.0)), 0.0)
    elif p.kind == "exp_left":
        v = np.where(x <= 0, np.exp(np.maximum(x, -745.0)), 0.0)
    elif p.kind == "gaussian":
        (sigma,) = p.params
        v = np.exp(-0.5 * (x / sigma) ** 2)
    elif p.kind == "box":
        a, b = p.params
        v = np.where((x >= a) & (x <= b), 1.0, 0.0)
    elif p.kind == "triangle":
        (w,) = p.params
        v = np.maximum(0.0, 1.0 - np.abs(x) / w)
    elif p.kind == "scaled_box_right":
        (n,) = p.params
        v = np.where((x >= 0) & (x <= 1.0 / n), n, 0.0)
    else:  # pragma: no cover - guarded by the constructor
        raise ConfigurationError(f"unknown preset kind {p.kind!r}")
    return float(v) if v.ndim == 0 else v


def _jumps(p: AnalyticPreset) -> list[tuple[float, float, float]]:
    """Jump points as (x0, left limit, right limit)."""
    if p.kind == "exp_right":
        return [(0.0, 0.0, 1.0)]
    if p.kind == "exp_left":
        return [(0.0, 1.0, 0.0)]
    if p.kind == "box":
        a, b = p.params
        return [(a, 0.0, 1.0), (b, 1.0, 0.0)]
    if p.kind == "scaled_box_right":
        (n,) = p.params
        return [(0.0, 0.0, n), (1.0 / n, n, 0.0)]
    return []


def analytic_support(p: AnalyticPreset, tail_cutoff: float) -> tuple[float, float]:
    """Smallest interval outside which |p| < tail_cutoff."""
    if p.kind == "exp_right":
        return (0.0, -math.log(tail_cutoff))
    if p.kind == "exp_left":
        return (math.log(tail_cutoff), 0.0)
    if p.kind == "gaussian":
        (sigma,) = p.params
        r = sigma * math.sqrt(2.0 * math.log(1.0 / tail_cutoff))
        return (-r, r)
    if p.kind == "box":
        a, b = p.params
        return (a, b)
    if p.kind == "triangle":
        (w,) = p.params
        return (-w, w)
    (n,) = p.params
    return (0.0, 1.0 / n)


def characteristic_width(p: AnalyticPreset) -> float:
    if p.kind in ("exp_right", "exp_left"):
        return 1.0
    if p.kind == "gaussian":
        return p.params[0]
    if p.kind == "box":
        return p.params[1] - p.params[0]
    if p.kind == "triangle":
        return p.params[0]
    return 1.0 / p.params[0]


def sample(p: AnalyticPreset, grid: GridSpec, tail_cutoff: float = 1e-12) -> GridFunction:
    """Sample a preset onto a grid.

    The declared support is the analytic support (clipped to the window and
    widened to the covering nodes).  Warns when the spacing exceeds half the
    preset's characteristic width.
    """
    if tail_cutoff <= 0:
        raise ConfigurationError("tail_cutoff must be positive")
    h = grid.h
    if h > 0.5 * characteristic_width(p):
        warnings.warn(
            f"grid spacing {h:g} too coarse for preset {p.name()} "
            f"(width {characteristic_width(p):g})",
            ResolutionWarning,
            stacklevel=2,
        )
    xs = grid.xs()
    vals = np.asarray(eval_preset(p, xs), dtype=float).copy()
    # average the one-sided limits where a jump sits on a node
    for x0, left, right in _jumps(p):
        hit = np.abs(xs - x0) < 1e-6 * h
        vals[hit] = 0.5 * (left + right)
    a, b = analytic_support(p, tail_cutoff)
    a = max(a, grid.lo)
    b = min(b, grid.hi)
    if a > b:
        raise ConfigurationError(
            f"support of {p.name()} lies outside window [{grid.lo}, {grid.hi}]"
        )
    # widen to the covering nodes so boundary samples stay inside the support
    ia = grid.clip_index(int(math.floor((a - grid.lo) / h + 1e-9)))
    ib = grid.clip_index(int(math.ceil((b - grid.lo) / h - 1e-9)))
    support = (float(xs[ia]), float(xs[ib]))
    mask = np.zeros_like(vals)
    mask[ia : ib + 1] = 1.0
    return GridFunction(grid, vals * mask, support, support_tol=tail_cutoff, label=p.name())


def parse_preset(spec: str) -> AnalyticPreset:
    """Parse CLI preset syntax ``kind[:param[:param]]``, e.g. ``box:0:1``."""
    parts = spec.split(":")
    kind = parts[0]
    if kind not in PRESET_KINDS:
        raise ConfigurationError(f"unknown preset {kind!r}")
    try:
        params = tuple(float(p) for p in parts[1:])
    except ValueError as e:
        raise ConfigurationError(f"bad preset parameters in {spec!r}") from e
    if not params:
        defaults = {"gaussian": (1.0,), "triangle": (1.0,), "box": (0.0, 1.0),
                    "scaled_box_right": (4.0,)}
        params = defaults.get(kind, ())
    return AnalyticPreset(kind, params)


DEFAULT_BATTERY = (
    "exp_right",
    "exp_left",
    "gaussian:1",
    "box:0:1",
    "box:-1:1",
    "triangle:1",
)
