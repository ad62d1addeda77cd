"""Shrinking-kernel families: approximate identities for the sharp convolution.

A delta sequence is an indexed family n -> delta_n of integrable kernels with
unit mass (P1), uniformly bounded absolute mass (P2), and supports shrinking
to {0} (P3).  Three built-in families live on [-1/n, 1/n] or [0, 1/n]:

    triangle_sym   unit-mass symmetric tent
    bump_sym       unit-mass quartic (biweight) bump, C^1 at its edges
    box_right      n * indicator[0, 1/n] -- deliberately non-even, so it
                   exercises the non-commutative side of the algebra

Elements are built by exact cell averaging: sample j holds the kernel's mass
over [x_j - h/2, x_j + h/2] divided by h, computed from the closed-form
antiderivative.  The per-cell integrals telescope, so the quadrature mass is
exactly 1 regardless of how 1/n aligns with the grid; pointwise sampling
would drift by O(n*h) whenever the kernel edge falls between nodes.

"supp delta_n -> 0" is operationalized as the radius max(|a|, |b|) of the
declared support [a, b] (the covered-node hull, within one spacing of the
analytic support); it is nonincreasing in n and bounded by ~1/n.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .convolve import sharp_convolve
from .grid import GridError, GridFunction, GridSpec, l1_norm, linear_combine
from .presets import ConfigurationError
from .transforms import cosine_transform

__all__ = [
    "ResolutionError",
    "DeltaSequence",
    "FAMILY_KINDS",
    "make_family",
    "sharp_product_family",
    "verify_axioms",
    "approx_identity_error",
    "cosine_limit_error",
]

FAMILY_KINDS = ("triangle_sym", "bump_sym", "box_right")


class ResolutionError(GridError):
    """Kernel index too large for the grid spacing (1/n < 2h)."""


# closed-form antiderivatives (kernel mass from -inf to x), one per family
def _cdf_box_right(n: int, x: np.ndarray) -> np.ndarray:
    return n * np.clip(x, 0.0, 1.0 / n)


def _cdf_triangle(n: int, x: np.ndarray) -> np.ndarray:
    u = np.clip(n * x, -1.0, 1.0)
    return np.where(u <= 0, 0.5 * (1.0 + u) ** 2, 1.0 - 0.5 * (1.0 - u) ** 2)


def _cdf_bump(n: int, x: np.ndarray) -> np.ndarray:
    u = np.clip(n * x, -1.0, 1.0)
    return (15.0 / 16.0) * (u - (2.0 / 3.0) * u**3 + 0.2 * u**5 + 8.0 / 15.0)


_CDFS: dict[str, Callable] = {
    "box_right": _cdf_box_right,
    "triangle_sym": _cdf_triangle,
    "bump_sym": _cdf_bump,
}


def _analytic_interval(kind: str, n: int) -> tuple[float, float]:
    return (0.0, 1.0 / n) if kind == "box_right" else (-1.0 / n, 1.0 / n)


def _cell_averaged(kind: str, n: int, grid: GridSpec) -> GridFunction:
    h = grid.h
    a, b = _analytic_interval(kind, n)
    ia = grid.clip_index(int(math.floor((a - grid.lo) / h)) - 1)
    ib = grid.clip_index(int(math.ceil((b - grid.lo) / h)) + 1)
    xs = grid.xs()[ia : ib + 1]
    cdf = _CDFS[kind]
    vals = (cdf(n, xs + 0.5 * h) - cdf(n, xs - 0.5 * h)) / h
    samples = np.zeros(grid.n)
    samples[ia : ib + 1] = vals
    nz = np.nonzero(vals)[0]
    lo_x = float(xs[nz[0]])
    hi_x = float(xs[nz[-1]])
    return GridFunction(grid, samples, (lo_x, hi_x), label=f"{kind}[{n}]")


class DeltaSequence:
    """Indexed kernel family with verified-on-demand elements.

    ``element_fn`` maps an index to a GridFunction; results are memoized
    (generation is pure, so caching is observationally transparent).
    """

    def __init__(self, kind: str, grid: GridSpec, bound_M: float,
                 element_fn: Callable[[int], GridFunction]) -> None:
        self.kind = kind
        self.grid = grid
        self.bound_M = float(bound_M)
        self._element_fn = element_fn
        self._cache: dict[int, GridFunction] = {}

    def max_index(self) -> int:
        """Largest n admitted by the resolution floor 1/n >= 2h."""
        return int(math.floor(1.0 / (2.0 * self.grid.h) * (1 + 1e-12)))

    def check_resolution(self, n: int) -> None:
        if n < 1:
            raise ResolutionError(f"index must be >= 1, got {n}")
        if 1.0 / n < 2.0 * self.grid.h * (1 - 1e-12):
            raise ResolutionError(
                f"kernel index {n} below resolution floor: 1/n = {1.0 / n:g} "
                f"< 2h = {2.0 * self.grid.h:g} (max index {self.max_index()})"
            )

    def element(self, n: int) -> GridFunction:
        self.check_resolution(n)
        if n not in self._cache:
            self._cache[n] = self._element_fn(n)
        return self._cache[n]

    def support_radius(self, n: int) -> float:
        return self.element(n).support_radius()


def make_family(kind: str, grid: GridSpec, params: tuple = ()) -> DeltaSequence:
    """Construct a built-in family on ``grid``.

    ``params`` is unused for the built-in kinds and exists for CLI symmetry.
    """
    if kind not in FAMILY_KINDS:
        raise ConfigurationError(f"unknown delta family {kind!r} (choose from {FAMILY_KINDS})")
    if not grid.is_symmetric:
        raise GridError("delta families need a grid symmetric about 0")
    return DeltaSequence(kind, grid, 1.0, lambda n: _cell_averaged(kind, n, grid))


def sharp_product_family(d1: DeltaSequence, d2: DeltaSequence) -> DeltaSequence:
    """Family n -> d1_n # d2_n (closed under the sharp product)."""
    if d1.grid != d2.grid:
        raise GridError("product family needs a shared grid")
    return DeltaSequence(
        f"sharp_product({d1.kind},{d2.kind})",
        d1.grid,
        d1.bound_M * d2.bound_M,
        lambda n: sharp_convolve(d1.element(n), d2.element(n)),
    )


def verify_axioms(d: DeltaSequence, n_max: int, p1_tol: float = 1e-9) -> dict:
    """Per-index report for unit mass, uniform absolute mass, shrinking support.

    Finite-prefix verification: indices 1..n_max only, as the report records.
    """
    d.check_resolution(n_max)
    masses, absmasses, radii = [], [], []
    for n in range(1, n_max + 1):
        el = d.element(n)
        sl = el.support_slice()
        masses.append(el.h * float(np.sum(el.samples[sl])))
        absmasses.append(l1_norm(el))
        radii.append(el.support_radius())

    p1_rows = [
        {"n": n, "mass": m, "error": abs(m - 1.0), "pass": abs(m - 1.0) <= p1_tol}
        for n, m in enumerate(masses, start=1)
    ]
    p2_rows = [
        {"n": n, "abs_mass": a, "pass": a <= d.bound_M + p1_tol}
        for n, a in enumerate(absmasses, start=1)
    ]
    nonincreasing = all(radii[i + 1] <= radii[i] + 1e-15 for i in range(len(radii) - 1))
    final_ok = radii[-1] <= 2.0 / n_max
    report = {
        "family": d.kind,
        "n_max": n_max,
        "prefix_verified": True,
        "unit_mass": {
            "tolerance": p1_tol,
            "per_n": p1_rows,
            "pass": all(r["pass"] for r in p1_rows),
        },
        "uniform_bound": {
            "bound": d.bound_M,
            "per_n": p2_rows,
            "pass": all(r["pass"] for r in p2_rows),
        },
        "shrinking_support": {
            "radii": radii,
            "nonincreasing": nonincreasing,
            "final_radius": radii[-1],
            "final_bound": 2.0 / n_max,
            "pass": nonincreasing and final_ok,
        },
    }
    report["pass"] = all(report[k]["pass"] for k in
                         ("unit_mass", "uniform_bound", "shrinking_support"))
    return report


def approx_identity_error(f: GridFunction, d: DeltaSequence, n: int) -> float:
    """||f # delta_n - f||_1: how far the kernel is from acting as identity."""
    return l1_norm(linear_combine(1.0, sharp_convolve(f, d.element(n)), -1.0, f))


def cosine_limit_error(d: DeltaSequence, n: int, K: float, t_points: int = 1001) -> float:
    """sup over |t| <= K of |C(delta_n)(t) - 1| (tends to 0 as n grows)."""
    if t_points % 2 == 0:
        t_points += 1
    tg = GridSpec(-K, K, t_points)
    vals = cosine_transform(d.element(n), tg).values
    return float(np.max(np.abs(vals - 1.0)))
