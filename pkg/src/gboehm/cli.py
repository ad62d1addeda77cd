"""Command-line front end: transforms, convolutions, and verification suites.

Verbs
-----
transform       sample a preset and write its Hartley/cosine/Fourier table
convolve        sharp or classical convolution of two presets
delta-check     kernel-family report (unit mass / bound / shrinking support)
boehmian-verify quotient verification for an embedded scenario
axioms          the full algebraic-law suite (commutativity expected to fail)
ext-hartley     extended transform of an embedded scenario, with sidecar
example-3       mirrored-exponential pair: numeric vs closed forms

Exit status: 0 when every contracted tolerance passes (an expected failure
counts as a pass), 1 on a tolerance violation (the offending check is
named), 2 on usage errors.  Identical configuration yields byte-identical
artifacts; outputs are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import boehmian as bm
from . import deltas as dl
from . import transforms as tr
from .ext_hartley import EvaluationError, ext_hartley as ext_hartley_transform
from .config import RunConfig, base_config, parse_grid_arg
from .convolve import WindowOverflowError, classical_convolve, sharp_convolve
from .grid import GridError, GridFunction
from .presets import AnalyticPreset, ConfigurationError, parse_preset, sample

USAGE_EXIT = 2
TOLERANCE_EXIT = 1


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".gboehm-tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        _atomic_write(out_path, text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_report(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _grid_function_text(f: GridFunction, fmt: str) -> str:
    return f.to_csv() if fmt == "csv" else json.dumps(f.to_json_dict(), indent=2) + "\n"


def _table_text(t: tr.TransformTable, fmt: str) -> str:
    return t.to_csv() if fmt == "csv" else json.dumps(t.to_json_dict(), indent=2) + "\n"


def _sample(cfg: RunConfig, name: str) -> GridFunction:
    return sample(parse_preset(name), cfg.grid_spec(), cfg.tail_cutoff)


def _family(cfg: RunConfig, kind: str) -> dl.DeltaSequence:
    return dl.make_family(kind, cfg.grid_spec())


def _split_scenario(s: str) -> tuple[str, str]:
    if "/" not in s:
        raise ConfigurationError(
            f"scenario must look like preset/family (e.g. gaussian:1/triangle_sym), got {s!r}"
        )
    preset, family = s.split("/", 1)
    return preset, family


# -- verb implementations -----------------------------------------------------


def cmd_transform(cfg: RunConfig, args) -> int:
    f = _sample(cfg, args.preset)
    fn = {"hartley": tr.hartley, "cosine": tr.cosine_transform, "fourier": tr.fourier}
    table = fn[args.kind](f, cfg.t_grid_spec())
    _emit(_table_text(table, cfg.output_format), cfg.output_path)
    return 0


def cmd_convolve(cfg: RunConfig, args) -> int:
    f = _sample(cfg, args.f)
    g = _sample(cfg, args.g)
    op = sharp_convolve if args.op == "sharp" else classical_convolve
    out = op(f, g, overflow_tol=cfg.overflow_tol)
    out.label = f"{args.f} {args.op} {args.g}"
    _emit(_grid_function_text(out, cfg.output_format), cfg.output_path)
    return 0


def cmd_delta_check(cfg: RunConfig, args) -> int:
    fam = _family(cfg, args.family)
    report = dl.verify_axioms(fam, n_max=cfg.nmax, p1_tol=cfg.p1_tol)
    payload = {"config": cfg.snapshot(), "report": report}
    _emit(_json_report(payload), cfg.output_path)
    if not report["pass"]:
        print(f"delta-check: family {args.family} failed "
              f"(unit_mass={report['unit_mass']['pass']} "
              f"uniform_bound={report['uniform_bound']['pass']} "
              f"shrinking_support={report['shrinking_support']['pass']})",
              file=sys.stderr)
        return TOLERANCE_EXIT
    return 0


def cmd_boehmian_verify(cfg: RunConfig, args) -> int:
    preset_name, family_kind = _split_scenario(args.scenario)
    f = _sample(cfg, preset_name)
    d = _family(cfg, family_kind)
    b = bm.embed(f, d, cfg.check_window, cfg.eps_quot)
    q = b.representative
    # padded representative (f # d_n # p_n) / (d_n # p_n) must stay equivalent
    pad = dl.make_family("bump_sym" if family_kind != "bump_sym" else "triangle_sym",
                         cfg.grid_spec())
    prod = dl.sharp_product_family(d, pad)
    q2 = bm.make_quotient(
        lambda n: sharp_convolve(q.numerator_at(n), pad.element(n)),
        prod, cfg.check_window, cfg.eps_quot, label="padded")
    eq_ok, eq_res = bm.equivalent(q, q2, cfg.check_window, cfg.eps_quot)
    report = {
        "config": cfg.snapshot(),
        "scenario": args.scenario,
        "prefix_verified": True,
        "quotient": {"max_residual": q.max_residual, "eps_quot": cfg.eps_quot},
        "padded_equivalence": {"residual": eq_res, "pass": eq_ok},
        "pass": eq_ok,
    }
    _emit(_json_report(report), cfg.output_path)
    if not eq_ok:
        print(f"boehmian-verify: padded equivalence failed (residual {eq_res:.3e})",
              file=sys.stderr)
        return TOLERANCE_EXIT
    return 0


def cmd_axioms(cfg: RunConfig, args, grid_explicit: bool) -> int:
    grid = cfg.grid_spec() if grid_explicit else bm.SUITE_GRID
    report = bm.axiom_suite(
        N=cfg.check_window, grid=grid, battery=cfg.battery,
        eps_quot=cfg.eps_quot, tol_assoc=cfg.tol_assoc,
        young_slack=cfg.young_slack, p1_tol=cfg.p1_tol,
        tail_cutoff=cfg.tail_cutoff)
    payload = {
        "config": dict(cfg.snapshot(), suite_grid=[grid.lo, grid.hi, grid.n]),
        "report": report,
    }
    _emit(_json_report(payload), cfg.output_path)
    if not report["pass"]:
        failed = [k for k, v in report.items()
                  if isinstance(v, dict) and v.get("pass") is False]
        print(f"axioms: failed checks: {', '.join(failed)}", file=sys.stderr)
        return TOLERANCE_EXIT
    return 0


def cmd_ext_hartley(cfg: RunConfig, args) -> int:
    preset_name, family_kind = _split_scenario(args.scenario)
    f = _sample(cfg, preset_name)
    d = _family(cfg, family_kind)
    b = bm.embed(f, d, cfg.check_window, cfg.eps_quot)
    table, diag = ext_hartley_transform(b, cfg.t_grid_spec(), cfg.c_min,
                                        return_diagnostics=True)
    sidecar = {
        "config": cfg.snapshot(),
        "scenario": args.scenario,
        "chosen_k": diag["chosen_k"],
        "raw_limit_index": diag["raw_limit_index"],
        "stable_vs_raw_gap": diag["stable_vs_raw_gap"],
        "gap_bound": diag["gap_bound"],
    }
    _emit(_table_text(table, cfg.output_format), cfg.output_path)
    if cfg.output_path:
        _atomic_write(cfg.output_path + ".meta.json", _json_report(sidecar))
    else:
        sys.stdout.write(_json_report(sidecar))
    gap_ok = all(g <= b_ + cfg.eps_quot + 1e-12
                 for g, b_ in zip(diag["stable_vs_raw_gap"], diag["gap_bound"]))
    if not gap_ok:
        print("ext-hartley: stable-vs-raw gap exceeded its algebraic bound",
              file=sys.stderr)
        return TOLERANCE_EXIT
    return 0


def _example3_closed_forms(xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    xneg = np.minimum(xs, 0.0)
    xpos = np.maximum(xs, 0.0)
    fg = np.where(xs >= 0, np.exp(-xpos) * (xpos + 0.5), 0.5 * np.exp(xneg))
    gf = np.where(xs > 0, 0.5 * np.exp(-xpos), np.exp(xneg) * (-xneg + 0.5))
    return fg, gf


def cmd_example3(cfg: RunConfig, args) -> int:
    grid = cfg.grid_spec()
    f = _sample(cfg, "exp_right")
    g = _sample(cfg, "exp_left")
    fg = sharp_convolve(f, g, overflow_tol=cfg.overflow_tol)
    gf = sharp_convolve(g, f, overflow_tol=cfg.overflow_tol)
    xs = grid.xs()
    closed_fg, closed_gf = _example3_closed_forms(xs)
    num_fg = 2.0 * fg.samples
    num_gf = 2.0 * gf.samples
    err_fg = np.abs(num_fg - closed_fg)
    err_gf = np.abs(num_gf - closed_gf)

    lines = ["x,numeric_2fg,closed_form_fg,abs_diff_fg,numeric_2gf,closed_form_gf,abs_diff_gf"]
    for row in zip(xs, num_fg, closed_fg, err_fg, num_gf, closed_gf, err_gf):
        lines.append(",".join("%.17g" % v for v in row))
    _emit("\n".join(lines) + "\n", cfg.output_path)

    inside = np.abs(xs) <= min(20.0, grid.hi)
    worst = max(float(np.max(err_fg[inside])), float(np.max(err_gf[inside])))
    if worst > 1e-4:
        print(f"example-3: closed-form deviation {worst:.3e} > 1e-4 on |x| <= 20",
              file=sys.stderr)
        return TOLERANCE_EXIT
    return 0


# -- argument plumbing --------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="config file (JSON or key = value)")
    p.add_argument("--grid", help="sample grid as lo:hi:n")
    p.add_argument("--tgrid", help="transform grid as lo:hi:n")
    p.add_argument("--tol-quot", type=float, dest="tol_quot")
    p.add_argument("--tol-conv", type=float, dest="tol_conv")
    p.add_argument("--cmin", type=float)
    p.add_argument("--nmax", type=int)
    p.add_argument("--format", choices=("csv", "json"), dest="fmt")
    p.add_argument("--out", dest="out")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gboehm",
        description="sharp-convolution algebra, kernel families, quotient classes, "
                    "and Hartley/cosine transforms, with verification suites")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("transform", help="transform table of a preset")
    p.add_argument("preset")
    p.add_argument("--kind", choices=("hartley", "cosine", "fourier"), default="hartley")
    _add_common(p)

    p = sub.add_parser("convolve", help="convolve two presets")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--op", choices=("sharp", "classic"), default="sharp")
    _add_common(p)

    p = sub.add_parser("delta-check", help="kernel family property report")
    p.add_argument("family")
    _add_common(p)

    p = sub.add_parser("boehmian-verify", help="verify an embedded scenario")
    p.add_argument("scenario", help="preset/family, e.g. gaussian:1/triangle_sym")
    _add_common(p)

    p = sub.add_parser("axioms", help="full algebraic-law suite")
    _add_common(p)

    p = sub.add_parser("ext-hartley", help="extended transform of a scenario")
    p.add_argument("scenario", help="preset/family, e.g. gaussian:1/triangle_sym")
    _add_common(p)

    p = sub.add_parser("example-3", help="mirrored-exponential pair vs closed forms")
    _add_common(p)
    return ap


def _resolve_config(args) -> tuple[RunConfig, set[str]]:
    cfg, explicit = base_config(getattr(args, "config", None))
    overrides = {}
    if getattr(args, "grid", None):
        overrides["grid"] = parse_grid_arg(args.grid)
    if getattr(args, "tgrid", None):
        overrides["t_grid"] = parse_grid_arg(args.tgrid)
    if getattr(args, "tol_quot", None) is not None:
        overrides["eps_quot"] = args.tol_quot
    if getattr(args, "tol_conv", None) is not None:
        overrides["tol_conv"] = args.tol_conv
    if getattr(args, "cmin", None) is not None:
        overrides["c_min"] = args.cmin
    if getattr(args, "nmax", None) is not None:
        overrides["nmax"] = args.nmax
    if getattr(args, "fmt", None):
        overrides["output_format"] = args.fmt
    if getattr(args, "out", None):
        overrides["output_path"] = args.out
    return cfg.with_overrides(**overrides), explicit | set(overrides)


def _merge_grid_flags(argv: list[str]) -> list[str]:
    """Join ``--grid -30:30:6001`` into ``--grid=-30:30:6001``.

    Grid values routinely start with a minus sign, which argparse would
    otherwise read as the next option.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--grid", "--tgrid") and i + 1 < len(argv) and ":" in argv[i + 1]:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_merge_grid_flags(list(argv)))
    try:
        cfg, explicit = _resolve_config(args)
    except (ValueError, OSError) as e:
        print(f"gboehm: bad configuration: {e}", file=sys.stderr)
        return USAGE_EXIT
    try:
        if args.verb == "transform":
            return cmd_transform(cfg, args)
        if args.verb == "convolve":
            return cmd_convolve(cfg, args)
        if args.verb == "delta-check":
            return cmd_delta_check(cfg, args)
        if args.verb == "boehmian-verify":
            return cmd_boehmian_verify(cfg, args)
        if args.verb == "axioms":
            return cmd_axioms(cfg, args, grid_explicit="grid" in explicit)
        if args.verb == "ext-hartley":
            return cmd_ext_hartley(cfg, args)
        if args.verb == "example-3":
            return cmd_example3(cfg, args)
        raise AssertionError(args.verb)
    except (ConfigurationError,) as e:
        print(f"gboehm: {e}", file=sys.stderr)
        return USAGE_EXIT
    except WindowOverflowError as e:
        print(f"gboehm: window overflow: {e}", file=sys.stderr)
        return TOLERANCE_EXIT
    except (GridError, dl.ResolutionError, bm.QuotientError, EvaluationError) as e:
        print(f"gboehm: {e}", file=sys.stderr)
        return TOLERANCE_EXIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
