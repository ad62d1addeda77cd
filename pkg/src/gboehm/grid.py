"""Uniform-grid representation of compactly supported real functions.

Everything downstream (convolutions, transforms, kernel families) works on
``GridFunction`` values: samples of a real function on a uniform grid over a
finite window, together with a declared support interval outside which the
samples are negligible.

Quadrature convention
---------------------
All integrals are composite-trapezoid sums over the full window.  Because
every function vanishes (to within ``support_tol``) at the window edges, the
trapezoid endpoint half-weights are immaterial and the rule collapses to
``h * sum(samples)``; restricting the sum to the declared support changes the
value by at most ``support_tol * (window width)``.  Sampled functions carry
the *average of one-sided limits* at jump points that land on grid nodes
(see ``presets.sample``), which keeps this rule second-order accurate across
jumps.  Using the single functional :func:`integrate` everywhere is what
makes the discrete product identities (mass, convolution theorems) exact to
rounding instead of merely O(h^2).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridError",
    "GridSpec",
    "GridFunction",
    "integrate",
    "l1_norm",
    "sup_norm",
    "linear_combine",
    "reflect",
    "even_part",
    "resample",
]

FLOAT_FMT = "%.17g"  # round-trips IEEE doubles exactly


class GridError(ValueError):
    """Grid mismatch, asymmetry, or malformed grid parameters."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``n`` samples on ``[lo, hi]``, spacing h = (hi-lo)/(n-1)."""

    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise GridError("grid endpoints must be finite")
        if not self.lo < self.hi:
            raise GridError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise GridError(f"need at least 2 samples, got {self.n}")

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def is_symmetric(self) -> bool:
        """True when the grid is mirror-symmetric about 0 with 0 on a node."""
        return self.lo == -self.hi and self.n % 2 == 1

    @property
    def center_index(self) -> int:
        if not self.is_symmetric:
            raise GridError("grid is not symmetric about 0")
        return (self.n - 1) // 2

    def index_of(self, x: float) -> int:
        """Nearest node index for ``x`` (must lie inside the window)."""
        if not (self.lo - 0.5 * self.h <= x <= self.hi + 0.5 * self.h):
            raise GridError(f"x={x} outside window [{self.lo}, {self.hi}]")
        return int(round((x - self.lo) / self.h))

    def clip_index(self, i: int) -> int:
        return min(max(i, 0), self.n - 1)


def _support_indices(grid: GridSpec, support: tuple[float, float]) -> tuple[int, int]:
    a, b = support
    h = grid.h
    ia = grid.clip_index(int(math.floor((a - grid.lo) / h + 1e-9)))
    ib = grid.clip_index(int(math.ceil((b - grid.lo) / h - 1e-9)))
    return ia, ib


@dataclass
class GridFunction:
    """Sampled real function with a declared support interval.

    Invariants (checked at construction): all samples finite; samples outside
    ``support`` do not exceed ``support_tol`` (scaled by the sample magnitude
    for large-amplitude functions such as narrow kernels).
    """

    grid: GridSpec
    samples: np.ndarray
    support: tuple[float, float]
    support_tol: float = 1e-12
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.shape != (self.grid.n,):
            raise GridError(
                f"samples length {self.samples.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(self.samples)):
            raise GridError("samples must be finite")
        a, b = self.support
        if not (self.grid.lo <= a <= b <= self.grid.hi):
            raise GridError(f"support {self.support} not inside window")
        ia, ib = _support_indices(self.grid, self.support)
        tol = self.support_tol * max(1.0, float(np.max(np.abs(self.samples), initial=0.0)))
        outside = np.concatenate([self.samples[:ia], self.samples[ib + 1 :]])
        if outside.size and float(np.max(np.abs(outside))) > tol:
            raise GridError(
                f"samples exceed {tol:g} outside declared support {self.support}"
            )
        self._supp_idx = (ia, ib)

    # -- basic views ------------------------------------------------------

    @property
    def h(self) -> float:
        return self.grid.h

    def xs(self) -> np.ndarray:
        return self.grid.xs()

    def support_slice(self) -> slice:
        ia, ib = self._supp_idx
        return slice(ia, ib + 1)

    def support_radius(self) -> float:
        a, b = self.support
        return max(abs(a), abs(b))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "grid": {"lo": self.grid.lo, "hi": self.grid.hi, "n": self.grid.n},
            "samples": [float(v) for v in self.samples],
            "support": [self.support[0], self.support[1]],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "GridFunction":
        g = GridSpec(float(d["grid"]["lo"]), float(d["grid"]["hi"]), int(d["grid"]["n"]))
        return cls(g, np.array(d["samples"], dtype=float), tuple(d["support"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, s: str) -> "GridFunction":
        return cls.from_json_dict(json.loads(s))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value"])
        for x, v in zip(self.xs(), self.samples):
            w.writerow([FLOAT_FMT % x, FLOAT_FMT % v])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, s: str, support_tol: float = 1e-12) -> "GridFunction":
        rows = list(csv.reader(io.StringIO(s)))
        if not rows or rows[0] != ["x", "value"]:
            raise GridError("expected CSV header 'x,value'")
        xs = np.array([float(r[0]) for r in rows[1:]])
        vs = np.array([float(r[1]) for r in rows[1:]])
        if len(xs) < 2:
            raise GridError("need at least two rows")
        g = GridSpec(float(xs[0]), float(xs[-1]), len(xs))
        support = _detect_support(g, vs, support_tol)
        return cls(g, vs, support, support_tol=support_tol)


def _detect_support(grid: GridSpec, samples: np.ndarray, tol: float) -> tuple[float, float]:
    """Smallest node interval containing all samples with |v| > tol."""
    idx = np.nonzero(np.abs(samples) > tol)[0]
    if idx.size == 0:
        return (0.0, 0.0) if grid.lo <= 0.0 <= grid.hi else (grid.lo, grid.lo)
    xs = grid.xs()
    return float(xs[idx[0]]), float(xs[idx[-1]])


# -- quadrature and norms ---------------------------------------------------


def integrate(f: GridFunction) -> float:
    """Window integral of ``f`` (trapezoid; reduces to h * sum, see module notes)."""
    return f.h * float(np.sum(f.samples[f.support_slice()]))


def l1_norm(f: GridFunction, rule: str = "trapezoid") -> float:
    """Integral of |f| over the window.

    ``rule="simpson"`` applies composite Simpson weights over the full grid
    (odd sample count required); it exists for quadrature cross-checks only.
    """
    if rule == "trapezoid":
        return f.h * float(np.sum(np.abs(f.samples[f.support_slice()])))
    if rule == "simpson":
        if f.grid.n % 2 == 0:
            raise GridError("Simpson rule needs an odd number of samples")
        w = np.ones(f.grid.n)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        return f.h / 3.0 * float(np.dot(w, np.abs(f.samples)))
    raise GridError(f"unknown quadrature rule {rule!r}")


def sup_norm(f: GridFunction) -> float:
    return float(np.max(np.abs(f.samples)))


# -- pointwise algebra -------------------------------------------------------


def _require_same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.grid != g.grid:
        raise GridError(f"grid mismatch: {f.grid} vs {g.grid}")


def linear_combine(c1: float, f: GridFunction, c2: float, g: GridFunction) -> GridFunction:
    """Pointwise c1*f + c2*g on a shared grid."""
    _require_same_grid(f, g)
    support = (min(f.support[0], g.support[0]), max(f.support[1], g.support[1]))
    tol = max(f.support_tol, g.support_tol)
    return GridFunction(f.grid, c1 * f.samples + c2 * g.samples, support, support_tol=tol)


def reflect(f: GridFunction) -> GridFunction:
    """x -> f(-x); requires a symmetric grid so the node set maps onto itself."""
    if not f.grid.is_symmetric:
        raise GridError("reflect needs a grid symmetric about 0")
    a, b = f.support
    return GridFunction(f.grid, f.samples[::-1].copy(), (-b, -a), support_tol=f.support_tol)


def even_part(g: GridFunction) -> GridFunction:
    """(g(x) + g(-x)) / 2, the effective kernel of the two-sided convolution."""
    r = reflect(g)
    return linear_combine(0.5, g, 0.5, r)


def resample(f: GridFunction, grid: GridSpec) -> GridFunction:
    """Deliberate linear-interpolation resample onto another grid.

    Grid mismatch elsewhere is an error by design; this is the one sanctioned
    conversion path.  Values outside the source window read as 0.
    """
    vals = np.interp(grid.xs(), f.xs(), f.samples, left=0.0, right=0.0)
    a = max(f.support[0], grid.lo)
    b = min(f.support[1], grid.hi)
    if a > b:
        a = b = max(min(0.0, grid.hi), grid.lo)
    return GridFunction(grid, vals, (a, b), support_tol=f.support_tol)
