"""Quotient sequences, their equivalence, arithmetic, and the law suite.

A quotient is a pair ((f_n), (delta_n)) of a function sequence and a kernel
family satisfying the cross condition f_n # delta_m = f_m # delta_n for all
indices; a Boehmian is an equivalence-class handle holding one verified
representative.  Sequences are generator callables checked on a finite
prefix (``check_window``), so every verdict here is prefix verification,
never a decision about the full infinite object -- reports say so.

Two useful identities drive the convergence checkers: for a quotient
(h_n)/(psi_n), the action ``X # psi_m`` realized in function space is just
the numerator h_m (by the cross condition), so sequence convergence against
a shared kernel family reduces to comparing numerator functions directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .convolve import sharp_convolve
from .deltas import DeltaSequence, make_family, sharp_product_family, verify_axioms
from .grid import GridError, GridFunction, GridSpec, l1_norm, linear_combine
from .presets import AnalyticPreset, parse_preset, sample, DEFAULT_BATTERY

__all__ = [
    "QuotientError",
    "Quotient",
    "Boehmian",
    "make_quotient",
    "embed",
    "zero_boehmian",
    "equivalent",
    "add",
    "scale",
    "star_extend",
    "delta_convergence_check",
    "big_delta_convergence_check",
    "axiom_suite",
]

DEFAULT_EPS_QUOT = 1e-6
DEFAULT_EPS_CONV = 1e-3
DEFAULT_CHECK_WINDOW = 8


class QuotientError(ValueError):
    """Cross condition violated beyond tolerance, or malformed inputs."""


def _rel_l1(diff: float, scale: float) -> float:
    """Relative L1 residual; absolute when the normalizer degenerates."""
    return diff if scale < 1e-12 else diff / scale


class Quotient:
    """Verified pair of a numerator sequence and a kernel family."""

    def __init__(self, numerator: Callable[[int], GridFunction],
                 denominator: DeltaSequence, check_window: int,
                 eps_quot: float = DEFAULT_EPS_QUOT, label: str = "") -> None:
        self._numerator_fn = numerator
        self.denominator = denominator
        self.check_window = int(check_window)
        self.eps_quot = float(eps_quot)
        self.label = label
        self._cache: dict[int, GridFunction] = {}
        self.max_residual = self._verify()

    def numerator_at(self, n: int) -> GridFunction:
        if n not in self._cache:
            self._cache[n] = self._numerator_fn(n)
        return self._cache[n]

    def _verify(self) -> float:
        worst = 0.0
        for m in range(1, self.check_window + 1):
            for n in range(m + 1, self.check_window + 1):
                fn, fm = self.numerator_at(n), self.numerator_at(m)
                dn, dm = self.denominator.element(n), self.denominator.element(m)
                diff = l1_norm(linear_combine(
                    1.0, sharp_convolve(fn, dm), -1.0, sharp_convolve(fm, dn)))
                scale = max(l1_norm(fn) * l1_norm(dm), l1_norm(fm) * l1_norm(dn))
                r = _rel_l1(diff, scale)
                if r > self.eps_quot:
                    raise QuotientError(
                        f"cross condition fails at (m={m}, n={n}): "
                        f"residual {r:.3e} > {self.eps_quot:g}"
                    )
                worst = max(worst, r)
        return worst


@dataclass
class Boehmian:
    """Equivalence-class handle: one verified representative plus a label."""

    representative: Quotient
    label: str = field(default="")


def make_quotient(numerator: Callable[[int], GridFunction], denominator: DeltaSequence,
                  N: int = DEFAULT_CHECK_WINDOW,
                  eps_quot: float = DEFAULT_EPS_QUOT, label: str = "") -> Quotient:
    """Verify the cross condition on indices <= N and return the quotient."""
    return Quotient(numerator, denominator, N, eps_quot, label)


def embed(f: GridFunction, d: DeltaSequence, N: int = DEFAULT_CHECK_WINDOW,
          eps_quot: float = DEFAULT_EPS_QUOT) -> Boehmian:
    """Canonical embedding of a function: representative (f # delta_n)/(delta_n)."""
    q = make_quotient(lambda n: sharp_convolve(f, d.element(n)), d, N, eps_quot,
                      label=f.label or "embedded")
    return Boehmian(q, label=q.label)


def zero_boehmian(d: DeltaSequence, N: int = DEFAULT_CHECK_WINDOW) -> Boehmian:
    g = d.grid
    z = GridFunction(g, np.zeros(g.n), (0.0, 0.0), label="zero")
    return embed(z, d, N)


def equivalent(q1: Quotient, q2: Quotient, N: int | None = None,
               eps_quot: float = DEFAULT_EPS_QUOT) -> tuple[bool, float]:
    """Cross-equivalence check: f_n # t_m = g_m # s_n for indices <= N.

    Returns (pass, max relative residual).  The residual matrix transposes
    under argument swap, so the verdict is symmetric by construction.
    """
    if q1.denominator.grid != q2.denominator.grid:
        raise GridError("equivalence needs a shared grid")
    if N is None:
        N = min(q1.check_window, q2.check_window)
    worst = 0.0
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            fn = q1.numerator_at(n)
            gm = q2.numerator_at(m)
            tm = q2.denominator.element(m)
            sn = q1.denominator.element(n)
            diff = l1_norm(linear_combine(
                1.0, sharp_convolve(fn, tm), -1.0, sharp_convolve(gm, sn)))
            scale = max(l1_norm(fn) * l1_norm(tm), l1_norm(gm) * l1_norm(sn))
            worst = max(worst, _rel_l1(diff, scale))
    return worst <= eps_quot, worst


def add(b1: Boehmian, b2: Boehmian, eps_quot: float = DEFAULT_EPS_QUOT) -> Boehmian:
    """Sum with representative (f1_n # d2_n + f2_n # d1_n) / (d1_n # d2_n)."""
    q1, q2 = b1.representative, b2.representative
    if q1.denominator.grid != q2.denominator.grid:
        raise GridError("addition needs a shared grid")
    denom = sharp_product_family(q1.denominator, q2.denominator)
    N = min(q1.check_window, q2.check_window)

    def numerator(n: int) -> GridFunction:
        a = sharp_convolve(q1.numerator_at(n), q2.denominator.element(n))
        b = sharp_convolve(q2.numerator_at(n), q1.denominator.element(n))
        return linear_combine(1.0, a, 1.0, b)

    q = make_quotient(numerator, denom, N, eps_quot,
                      label=f"({b1.label})+({b2.label})")
    return Boehmian(q, label=q.label)


def scale(c: float, b: Boehmian) -> Boehmian:
    """Scalar multiple: numerator scaled, same denominator."""
    q = b.representative
    qs = make_quotient(
        lambda n: linear_combine(c, q.numerator_at(n), 0.0, q.numerator_at(n)),
        q.denominator, q.check_window, q.eps_quot, label=f"{c:g}*({b.label})")
    return Boehmian(qs, label=qs.label)


def star_extend(b: Boehmian, t: GridFunction,
                eps_quot: float = DEFAULT_EPS_QUOT) -> Boehmian:
    """Action of a plain function on a Boehmian: (f_n # t) / (delta_n)."""
    q = b.representative
    qs = make_quotient(lambda n: sharp_convolve(q.numerator_at(n), t),
                       q.denominator, q.check_window, eps_quot,
                       label=f"({b.label})#({t.label})")
    return Boehmian(qs, label=qs.label)


# -- convergence verifiers ----------------------------------------------------


def _require_shared_denominator(b_seq: Callable[[int], Boehmian], b: Boehmian,
                                ms: list[int]) -> None:
    d = b.representative.denominator
    for m in ms:
        if b_seq(m).representative.denominator is not d:
            raise QuotientError(
                "convergence checks need a shared denominator family "
                f"(sequence member m={m} differs)"
            )


def _sample_indices(horizon: int) -> list[int]:
    ms = sorted({1, 2, 4} | {horizon // 4, horizon // 2, horizon})
    return [m for m in ms if 1 <= m <= horizon]


def delta_convergence_check(b_seq: Callable[[int], Boehmian], b: Boehmian,
                            N: int, horizon: int,
                            eps_conv: float = DEFAULT_EPS_CONV) -> tuple[bool, dict]:
    """Per-kernel-index convergence: X_m # delta_n -> X # delta_n as m grows.

    Finite-prefix verifier (not a decision procedure): for each n <= N it
    inspects ||X_m # delta_n - X # delta_n||_1 at sampled m up to ``horizon``
    and requires the final residual below eps_conv * ||X # delta_n||_1 without
    growth from first to last sample.
    """
    ms = _sample_indices(horizon)
    _require_shared_denominator(b_seq, b, ms)
    rows = []
    for n in range(1, N + 1):
        ref = b.representative.numerator_at(n)
        scale_n = max(l1_norm(ref), 1e-12)
        res = [l1_norm(linear_combine(1.0, b_seq(m).representative.numerator_at(n),
                                      -1.0, ref)) for m in ms]
        ok = res[-1] <= eps_conv * scale_n and res[-1] <= res[0] + 1e-15
        rows.append({"n": n, "m_samples": ms, "residuals": res,
                     "tolerance": eps_conv * scale_n, "pass": ok})
    return all(r["pass"] for r in rows), {"per_n": rows, "prefix_verified": True}


def big_delta_convergence_check(b_seq: Callable[[int], Boehmian], b: Boehmian,
                                horizon: int,
                                eps_conv: float = DEFAULT_EPS_CONV) -> tuple[bool, dict]:
    """Diagonal convergence: (X_m - X) # delta_m -> 0 as m grows.

    With a shared denominator family the realized function equals the m-th
    numerator of the difference quotient, so the residual is
    ||num_m(m) - num(m)||_1 along the diagonal.
    """
    ms = _sample_indices(horizon)
    _require_shared_denominator(b_seq, b, ms)
    rows = []
    for m in ms:
        ref = b.representative.numerator_at(m)
        diff = l1_norm(linear_combine(
            1.0, b_seq(m).representative.numerator_at(m), -1.0, ref))
        rows.append({"m": m, "residual": diff,
                     "tolerance": eps_conv * max(l1_norm(ref), 1e-12)})
    final_ok = rows[-1]["residual"] <= rows[-1]["tolerance"]
    no_growth = rows[-1]["residual"] <= rows[0]["residual"] + 1e-15
    verdict = final_ok and no_growth
    return verdict, {"diagonal": rows, "pass": verdict, "prefix_verified": True}


# -- algebraic law suite ------------------------------------------------------

SUITE_GRID = GridSpec(-16.0, 16.0, 8193)  # h = 1/256 admits kernel indices to 128

_ASSOC_TRIPLES = (
    ("box:0:1", "box:0:1", "box:0:1"),
    ("gaussian:1", "triangle:1", "box:0:1"),
    ("box:-1:1", "gaussian:1", "triangle:1"),
    ("triangle:1", "triangle:1", "gaussian:1"),
    ("exp_right", "gaussian:1", "triangle:1"),
)


def _battery_functions(battery, grid, tail_cutoff):
    out = {}
    for name in battery:
        p = parse_preset(name) if isinstance(name, str) else name
        out[p.name()] = sample(p, grid, tail_cutoff)
    return out


def axiom_suite(N: int = DEFAULT_CHECK_WINDOW, grid: GridSpec | None = None,
                battery=DEFAULT_BATTERY, family_kinds=("triangle_sym", "bump_sym", "box_right"),
                op=sharp_convolve, eps_quot: float = DEFAULT_EPS_QUOT,
                tol_assoc: float = 1e-6, young_slack: float = 1e-6,
                p1_tol: float = 1e-9, tail_cutoff: float = 1e-12,
                approx_identity_frac: float = 0.01, seed: int = 20240901) -> dict:
    """Run every algebraic law as a residual check over the battery.

    Commutativity is *expected to fail* for the sharp convolution and is
    reported as a confirmed failure with its witness value; the suite counts
    that as behaving correctly.  ``op`` exists so the same battery can be
    run against a commutative convolution for contrast.  All quantifiers
    range over the finite battery/prefix; the report records that scope.
    """
    from .convolve import associativity_residuals, young_residual  # local: same module family

    if grid is None:
        grid = SUITE_GRID
    rng = np.random.RandomState(seed)
    funcs = _battery_functions(battery, grid, tail_cutoff)
    names = list(funcs)
    report: dict = {
        "scope": {
            "battery": names,
            "families": list(family_kinds),
            "check_window": N,
            "prefix_verified": True,
        },
    }

    # additivity and scalar homogeneity: exact at sample arithmetic level
    add_rows, scal_rows = [], []
    for i in range(min(3, len(names) - 2)):
        f1, f2, g = funcs[names[i]], funcs[names[i + 1]], funcs[names[i + 2]]
        lhs = op(linear_combine(1.0, f1, 1.0, f2), g)
        rhs = linear_combine(1.0, op(f1, g), 1.0, op(f2, g))
        r = l1_norm(linear_combine(1.0, lhs, -1.0, rhs))
        s = (l1_norm(f1) + l1_norm(f2)) * l1_norm(g)
        add_rows.append({"pair": [names[i], names[i + 1], names[i + 2]],
                         "residual": _rel_l1(r, s)})
        c = float(rng.uniform(-3.0, 3.0))
        lhs2 = op(linear_combine(c, f1, 0.0, f1), g)
        rhs2 = op(f1, g)
        r2 = l1_norm(linear_combine(1.0, lhs2, -c, rhs2))
        scal_rows.append({"f": names[i], "g": names[i + 2], "c": c,
                          "residual": _rel_l1(r2, abs(c) * l1_norm(f1) * l1_norm(g))})
    report["additivity"] = {
        "rows": add_rows, "tolerance": 1e-12,
        "pass": all(r["residual"] <= 1e-12 for r in add_rows),
    }
    report["scalar_homogeneity"] = {
        "rows": scal_rows, "tolerance": 1e-12,
        "pass": all(r["residual"] <= 1e-12 for r in scal_rows),
    }

    # associativity: g#(s#t) = (g#s)#t, and the swapped form f#(s#t) = (f#t)#s
    assoc_rows = []
    for spec3 in _ASSOC_TRIPLES:
        fs = [funcs.get(s) or sample(parse_preset(s), grid, tail_cutoff) for s in spec3]
        scale3 = l1_norm(fs[0]) * l1_norm(fs[1]) * l1_norm(fs[2])
        if op is sharp_convolve:
            r1, r2 = associativity_residuals(*fs)
        else:
            a = op(op(fs[0], fs[1]), fs[2])
            bb = op(fs[0], op(fs[1], fs[2]))
            cc = op(op(fs[0], fs[2]), fs[1])
            r1 = l1_norm(linear_combine(1.0, a, -1.0, bb))
            r2 = l1_norm(linear_combine(1.0, bb, -1.0, cc))
        assoc_rows.append({"triple": list(spec3),
                           "left_residual": _rel_l1(r1, scale3),
                           "swap_residual": _rel_l1(r2, scale3)})
    report["mixed_associativity"] = {
        "rows": assoc_rows, "tolerance": tol_assoc,
        "pass": all(max(r["left_residual"], r["swap_residual"]) <= tol_assoc
                    for r in assoc_rows),
    }

    # commutativity: confirmed failure for the sharp product
    f = funcs.get("exp_right") or sample(AnalyticPreset("exp_right"), grid, tail_cutoff)
    g = funcs.get("exp_left") or sample(AnalyticPreset("exp_left"), grid, tail_cutoff)
    witness = l1_norm(linear_combine(1.0, op(f, g), -1.0, op(g, f)))
    holds = witness <= 1e-6 * l1_norm(f) * l1_norm(g)
    expected_failure = op is sharp_convolve
    report["commutativity"] = {
        "witness": witness,
        "holds": holds,
        "expected_failure": expected_failure,
        "pass": holds != expected_failure,
    }

    # continuity of the product in its first argument, via the norm bound
    cont_rows = []
    e = funcs.get("gaussian:1") or sample(AnalyticPreset("gaussian", (1.0,)), grid, tail_cutoff)
    for name in names[:2]:
        f0 = funcs[name]
        res = []
        for n in (2, 16):
            fn = linear_combine(1.0, f0, 1.0 / n, e)
            d = l1_norm(linear_combine(1.0, op(fn, g), -1.0, op(f0, g)))
            bound = l1_norm(linear_combine(1.0, fn, -1.0, f0)) * l1_norm(g)
            res.append({"n": n, "distance": d, "norm_bound": bound,
                        "bound_holds": d <= bound * (1 + 1e-9) + 1e-12})
        cont_rows.append({"f": name, "steps": res,
                          "decreases": res[-1]["distance"] < res[0]["distance"]})
    report["convolution_continuity"] = {
        "rows": cont_rows,
        "pass": all(r["decreases"] and all(s["bound_holds"] for s in r["steps"])
                    for r in cont_rows),
    }

    # family closure under the product
    fam1 = make_family(family_kinds[0], grid)
    fam2 = make_family(family_kinds[-1], grid)
    closure_report = verify_axioms(sharp_product_family(fam1, fam2),
                                   n_max=min(N, fam1.max_index() // 2), p1_tol=1e-8)
    report["family_closure"] = {
        "families": [fam1.kind, fam2.kind],
        "report": closure_report,
        "pass": closure_report["pass"],
    }

    # approximate identity over battery x families
    from .deltas import approx_identity_error

    ai_rows = []
    for name in names:
        f0 = funcs[name]
        eps_f = approx_identity_frac * l1_norm(f0)
        for kind in family_kinds:
            fam = make_family(kind, grid)
            cap = fam.max_index()
            ns = [n for n in (8, 16, 32, 64, 128) if n <= cap]
            errs = [approx_identity_error(f0, fam, n) for n in ns]
            ai_rows.append({
                "f": name, "family": kind, "n": ns, "errors": errs,
                "threshold": eps_f,
                "pass": min(errs) <= eps_f and errs[-1] < errs[0],
            })
    report["approximate_identity"] = {
        "rows": ai_rows, "fraction": approx_identity_frac,
        "pass": all(r["pass"] for r in ai_rows),
    }

    # equivalence transitivity chain on three pairwise-equivalent quotients
    base = funcs.get("gaussian:1") or e
    d1 = make_family("triangle_sym", grid)
    d2 = make_family("bump_sym", grid)
    chainN = min(N, 6)
    q1 = embed(base, d1, chainN).representative
    q3 = embed(base, d2, chainN).representative
    dprod = sharp_product_family(d1, d2)
    q2 = make_quotient(
        lambda n: sharp_convolve(sharp_convolve(base, d1.element(n)), d2.element(n)),
        dprod, chainN, eps_quot, label="padded")
    ok12, r12 = equivalent(q1, q2, chainN, eps_quot)
    ok23, r23 = equivalent(q2, q3, chainN, eps_quot)
    ok13, r13 = equivalent(q1, q3, chainN, eps_quot)
    inflation = 3.0
    report["equivalence_transitivity"] = {
        "residuals": {"q1~q2": r12, "q2~q3": r23, "q1~q3": r13},
        "tolerance": eps_quot, "inflation_bound": inflation,
        "pass": ok12 and ok23 and r13 <= inflation * max(r12, r23, eps_quot),
    }

    report["pass"] = all(report[k]["pass"] for k in (
        "additivity", "scalar_homogeneity", "mixed_associativity", "commutativity",
        "convolution_continuity", "family_closure", "approximate_identity",
        "equivalence_transitivity"))
    return report
