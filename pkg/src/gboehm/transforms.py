"""Hartley, full-line cosine, and Fourier transforms by direct quadrature.

Definitions (as implemented):

    hartley:  H(f)(t) = (2*pi)^(-1/2) * integral f(x) [cos(xt) + sin(xt)] dx
    cosine:   C(f)(t) = integral f(x) cos(xt) dx          (no prefactor)
    fourier:  F(f)(t) = (2*pi)^(-1/2) * integral f(x) e^(-ixt) dx

The cosine transform deliberately carries no normalization: the product
identity H(f # g) = H(f) * C(g) holds only with these mixed conventions.
Each value is a direct quadrature of the defining integral at its t (no
DFT), using the same trapezoid functional as the rest of the package; that
shared functional is what makes the product identities exact at sample
level rather than only up to quadrature error.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import FLOAT_FMT, GridError, GridFunction, GridSpec, _detect_support, l1_norm
from .convolve import sharp_convolve

__all__ = [
    "TransformTable",
    "hartley",
    "cosine_transform",
    "fourier",
    "fourier_hartley_relation_residual",
    "hartley_convolution_residual",
    "cosine_convolution_residual",
    "table_to_grid_function",
    "abs_moment",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)
_T_BLOCK = 256  # bounds the transient t-by-x kernel blocks


@dataclass
class TransformTable:
    """Sampled transform values on a uniform t grid."""

    t_grid: GridSpec
    values: np.ndarray
    source_tag: str = ""
    kind: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        if self.values.shape != (self.t_grid.n,):
            raise GridError("values length does not match t grid")
        if not np.all(np.isfinite(self.values)):
            raise GridError("transform values must be finite")

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def ts(self) -> np.ndarray:
        return self.t_grid.xs()

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.is_complex:
            w.writerow(["t", "re", "im"])
            for t, v in zip(self.ts(), self.values):
                w.writerow([FLOAT_FMT % t, FLOAT_FMT % v.real, FLOAT_FMT % v.imag])
        else:
            w.writerow(["t", "value"])
            for t, v in zip(self.ts(), self.values):
                w.writerow([FLOAT_FMT % t, FLOAT_FMT % v])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        d = {
            "t_grid": {"lo": self.t_grid.lo, "hi": self.t_grid.hi, "n": self.t_grid.n},
            "source": self.source_tag,
            "kind": self.kind,
        }
        if self.is_complex:
            d["values_re"] = [float(v) for v in self.values.real]
            d["values_im"] = [float(v) for v in self.values.imag]
        else:
            d["values"] = [float(v) for v in self.values]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, s: str) -> "TransformTable":
        d = json.loads(s)
        g = GridSpec(float(d["t_grid"]["lo"]), float(d["t_grid"]["hi"]), int(d["t_grid"]["n"]))
        if "values_re" in d:
            vals = np.array(d["values_re"]) + 1j * np.array(d["values_im"])
        else:
            vals = np.array(d["values"], dtype=float)
        return cls(g, vals, d.get("source", ""), d.get("kind", ""))


def _quad_kernel(f: GridFunction, t_grid: GridSpec, kernel) -> np.ndarray:
    """h * sum over supp(f) of f(x) * kernel(x t), blocked over t.

    einsum (unoptimized) keeps a fixed per-t summation order.
    """
    sl = f.support_slice()
    xs = f.xs()[sl]
    fs = f.samples[sl]
    ts = t_grid.xs()
    out = np.empty(t_grid.n, dtype=float)
    for start in range(0, t_grid.n, _T_BLOCK):
        tb = ts[start : start + _T_BLOCK]
        phase = np.outer(tb, xs)
        out[start : start + _T_BLOCK] = np.einsum("ij,j->i", kernel(phase), fs)
    return out * f.h


def hartley(f: GridFunction, t_grid: GridSpec) -> TransformTable:
    """Hartley transform table of ``f`` on ``t_grid``."""
    vals = _quad_kernel(f, t_grid, lambda p: np.cos(p) + np.sin(p)) / _SQRT2PI
    return TransformTable(t_grid, vals, source_tag=f.label, kind="hartley")


def cosine_transform(f: GridFunction, t_grid: GridSpec) -> TransformTable:
    """Full-line cosine transform table (no prefactor)."""
    vals = _quad_kernel(f, t_grid, np.cos)
    return TransformTable(t_grid, vals, source_tag=f.label, kind="cosine")


def fourier(f: GridFunction, t_grid: GridSpec) -> TransformTable:
    """Fourier transform table (complex values)."""
    re = _quad_kernel(f, t_grid, np.cos)
    im = _quad_kernel(f, t_grid, np.sin)
    vals = (re - 1j * im) / _SQRT2PI
    return TransformTable(t_grid, vals, source_tag=f.label, kind="fourier")


def _require_symmetric_t(t_grid: GridSpec) -> None:
    if not t_grid.is_symmetric:
        raise GridError("need a t grid symmetric about 0")


def fourier_hartley_relation_residual(f: GridFunction, t_grid: GridSpec) -> float:
    """Sup residual of F(f)(t) = [H(t) + H(-t)]/2 - i [H(t) - H(-t)]/2.

    H(-t) denotes the Hartley table at the reflected argument (the reading
    under which the relation actually holds; treating the minus sign as
    linearity would falsify it).
    """
    _require_symmetric_t(t_grid)
    ht = hartley(f, t_grid).values
    hr = ht[::-1]  # t -> -t on a symmetric grid
    ft = fourier(f, t_grid).values
    recon = 0.5 * (ht + hr) - 0.5j * (ht - hr)
    return float(np.max(np.abs(ft - recon)))


def hartley_convolution_residual(f: GridFunction, g: GridFunction,
                                 t_grid: GridSpec) -> float:
    """sup_t | H(f # g)(t) - H(f)(t) * C(g)(t) |."""
    lhs = hartley(sharp_convolve(f, g), t_grid).values
    rhs = hartley(f, t_grid).values * cosine_transform(g, t_grid).values
    return float(np.max(np.abs(lhs - rhs)))


def cosine_convolution_residual(f: GridFunction, g: GridFunction,
                                t_grid: GridSpec) -> float:
    """sup_t | C(f # g)(t) - C(f)(t) * C(g)(t) |."""
    lhs = cosine_transform(sharp_convolve(f, g), t_grid).values
    rhs = cosine_transform(f, t_grid).values * cosine_transform(g, t_grid).values
    return float(np.max(np.abs(lhs - rhs)))


def table_to_grid_function(tbl: TransformTable, support_tol: float = 1e-12) -> GridFunction:
    """View a real transform table as a function on its t grid.

    Used for iterated transforms (the involution check); the support is
    re-detected by threshold since tables carry none.
    """
    if tbl.is_complex:
        raise GridError("only real tables can be viewed as grid functions")
    support = _detect_support(tbl.t_grid, tbl.values, support_tol)
    return GridFunction(tbl.t_grid, tbl.values.copy(), support, support_tol=support_tol)


def abs_moment(f: GridFunction) -> float:
    """Quadrature of |x f(x)|; a Lipschitz surrogate for transform tables."""
    sl = f.support_slice()
    return f.h * float(np.sum(np.abs(f.xs()[sl] * f.samples[sl])))
