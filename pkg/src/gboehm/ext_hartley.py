"""Hartley transform extended from functions to quotient classes.

For a quotient (f_n)/(delta_n) the transform of the class is the limit of
H(f_n)(t).  Evaluation uses the stabilized form: pick, per t, the smallest
index k whose kernel keeps |C(delta_k)(t)| >= c_min and return
H(f_k)(t) / C(delta_k)(t).  The product identity H(f # g) = H(f) * C(g)
makes this independent of k and of the representative, and equal to the
classical transform on embedded functions.  Division is never regularized:
if no admissible k exists for some t the evaluation fails loudly with the
index that would be needed, because a silent epsilon would mask a genuinely
out-of-range t.
"""

from __future__ import annotations

import math

import numpy as np

from .boehmian import (
    Boehmian,
    Quotient,
    add,
    delta_convergence_check,
    equivalent,
    scale,
)
from .grid import GridError, GridSpec, l1_norm
from .transforms import TransformTable, cosine_transform, hartley

__all__ = [
    "EvaluationError",
    "ext_hartley",
    "ext_hartley_on_quotient",
    "consistency_residual",
    "representative_independence_residual",
    "linearity_residual",
    "injectivity_probe",
    "continuity_residual",
]

DEFAULT_C_MIN = 0.5


class EvaluationError(ValueError):
    """No kernel index reaches the cosine floor for some t."""


def ext_hartley_on_quotient(q: Quotient, t_grid: GridSpec,
                            c_min: float = DEFAULT_C_MIN,
                            return_diagnostics: bool = False):
    """Stabilized per-t evaluation on a verified quotient.

    Returns the TransformTable, plus a diagnostics dict (chosen index per t,
    stable-vs-raw-limit gap and its algebraic bound) when requested.  The
    k-choice is deterministic (smallest admissible index), so parallel or
    serial evaluation order cannot change results.
    """
    N = q.check_window
    d = q.denominator
    cos_tables = np.stack([cosine_transform(d.element(k), t_grid).values
                           for k in range(1, N + 1)])
    admissible = np.abs(cos_tables) >= c_min
    k_idx = np.argmax(admissible, axis=0)  # first admissible index, 0-based
    bad = ~admissible[k_idx, np.arange(t_grid.n)]
    if np.any(bad):
        ts = t_grid.xs()[bad]
        t_worst = float(ts[np.argmax(np.abs(ts))])
        r1 = d.support_radius(1)
        k_req = max(N + 1, math.ceil(2.0 * d.bound_M * abs(t_worst) * r1))
        raise EvaluationError(
            f"|C(delta_k)({t_worst:g})| < {c_min:g} for every k <= {N}; "
            f"shrinking supports guarantee success for large k -- increase "
            f"the check window to about {k_req} or narrow the t range"
        )

    used = sorted(set(int(k) for k in k_idx))
    h_tables = {k: hartley(q.numerator_at(k + 1), t_grid).values for k in used}
    cols = np.arange(t_grid.n)
    hk = np.stack([h_tables[k] for k in used])
    pos = np.searchsorted(used, k_idx)
    values = hk[pos, cols] / cos_tables[k_idx, cols]
    table = TransformTable(t_grid, values, source_tag=q.label, kind="ext_hartley")
    if not return_diagnostics:
        return table
    raw = hartley(q.numerator_at(N), t_grid).values
    gap = np.abs(values - raw)
    gap_bound = np.abs(1.0 - cos_tables[N - 1]) * np.abs(values)
    diagnostics = {
        "chosen_k": [int(k) + 1 for k in k_idx],
        "raw_limit_index": N,
        "stable_vs_raw_gap": [float(v) for v in gap],
        "gap_bound": [float(v) for v in gap_bound],
    }
    return table, diagnostics


def ext_hartley(b: Boehmian, t_grid: GridSpec, c_min: float = DEFAULT_C_MIN,
                return_diagnostics: bool = False):
    """Extended transform of a Boehmian on a t grid."""
    return ext_hartley_on_quotient(b.representative, t_grid, c_min,
                                   return_diagnostics)


def consistency_residual(f, d, t_grid: GridSpec, N: int = 8,
                         c_min: float = DEFAULT_C_MIN) -> float:
    """sup_t |ext(embed(f, d)) - hartley(f)|: agreement with the classical map."""
    from .boehmian import embed

    ext = ext_hartley(embed(f, d, N), t_grid, c_min).values
    cls = hartley(f, t_grid).values
    return float(np.max(np.abs(ext - cls)))


def representative_independence_residual(q1: Quotient, q2: Quotient,
                                         t_grid: GridSpec,
                                         c_min: float = DEFAULT_C_MIN) -> float:
    """sup_t difference of the transform across two equivalent representatives."""
    ok, res = equivalent(q1, q2)
    if not ok:
        raise GridError(
            f"representatives are not equivalent (residual {res:.3e}); "
            "independence is only claimed across one class"
        )
    v1 = ext_hartley_on_quotient(q1, t_grid, c_min).values
    v2 = ext_hartley_on_quotient(q2, t_grid, c_min).values
    return float(np.max(np.abs(v1 - v2)))


def linearity_residual(b1: Boehmian, b2: Boehmian, c1: float, c2: float,
                       t_grid: GridSpec, c_min: float = DEFAULT_C_MIN) -> float:
    """sup_t |ext(c1 b1 + c2 b2) - (c1 ext(b1) + c2 ext(b2))|."""
    combo = add(scale(c1, b1), scale(c2, b2))
    lhs = ext_hartley(combo, t_grid, c_min).values
    rhs = (c1 * ext_hartley(b1, t_grid, c_min).values
           + c2 * ext_hartley(b2, t_grid, c_min).values)
    return float(np.max(np.abs(lhs - rhs)))


def injectivity_probe(b: Boehmian, t_grid: GridSpec,
                      transform_tol: float = 1e-6, numerator_tol: float = 1e-3,
                      c_min: float = DEFAULT_C_MIN) -> dict:
    """Desk-scale contrapositive of injectivity.

    If the transform is uniformly below ``transform_tol`` the class should be
    (numerically) zero: every prefix numerator must have L1 norm below
    ``numerator_tol``.  Reports both numbers either way.
    """
    sup_t = float(np.max(np.abs(ext_hartley(b, t_grid, c_min).values)))
    q = b.representative
    max_num = max(l1_norm(q.numerator_at(n)) for n in range(1, q.check_window + 1))
    triggered = sup_t <= transform_tol
    return {
        "sup_transform": sup_t,
        "max_numerator_l1": max_num,
        "transform_tol": transform_tol,
        "numerator_tol": numerator_tol,
        "triggered": triggered,
        "pass": (max_num <= numerator_tol) if triggered else True,
    }


def continuity_residual(b_seq, b: Boehmian, t_grid: GridSpec, horizon: int,
                        eps: float = 1e-3, c_min: float = DEFAULT_C_MIN,
                        conv_window: int = 4) -> dict:
    """Transform continuity along a convergent sequence of classes.

    Precondition: the sequence converges in the per-kernel-index sense; then
    sup_t |ext(b_m) - ext(b)| must fall below ``eps`` by m = horizon.
    """
    ok, _ = delta_convergence_check(b_seq, b, conv_window, horizon)
    if not ok:
        raise GridError("sequence does not converge; continuity check undefined")
    ref = ext_hartley(b, t_grid, c_min).values
    ms = sorted({1, max(1, horizon // 4), max(1, horizon // 2), horizon})
    rows = []
    for m in ms:
        v = ext_hartley(b_seq(m), t_grid, c_min).values
        rows.append({"m": m, "sup_residual": float(np.max(np.abs(v - ref)))})
    final = rows[-1]["sup_residual"]
    verdict = final <= eps and final <= rows[0]["sup_residual"] + 1e-15
    return {"steps": rows, "eps": eps, "pass": verdict, "prefix_verified": True}
