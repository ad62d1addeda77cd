import math

import numpy as np
import pytest

from gboehm import (
    GridError,
    GridFunction,
    GridSpec,
    even_part,
    integrate,
    l1_norm,
    linear_combine,
    reflect,
    resample,
    sample,
    sup_norm,
)
from gboehm.presets import AnalyticPreset, parse_preset

from _oracles import quad_l1


def test_gridspec_rejects_bad_params():
    with pytest.raises(GridError):
        GridSpec(1.0, 1.0, 10)
    with pytest.raises(GridError):
        GridSpec(0.0, 1.0, 1)
    with pytest.raises(GridError):
        GridSpec(float("nan"), 1.0, 10)


def test_gridspec_spacing_and_symmetry():
    g = GridSpec(-30.0, 30.0, 6001)
    assert g.h == pytest.approx(0.01)
    assert g.is_symmetric
    assert g.center_index == 3000
    assert not GridSpec(-1.0, 2.0, 11).is_symmetric
    with pytest.raises(GridError):
        GridSpec(0.0, 1.0, 11).center_index


def test_gridfunction_rejects_samples_outside_support():
    g = GridSpec(-2.0, 2.0, 401)
    vals = np.zeros(401)
    vals[10] = 0.5  # x = -1.9, far outside the claimed support
    with pytest.raises(GridError):
        GridFunction(g, vals, (0.0, 1.0))


def test_gridfunction_rejects_nonfinite():
    g = GridSpec(-1.0, 1.0, 11)
    vals = np.zeros(11)
    vals[5] = float("inf")
    with pytest.raises(GridError):
        GridFunction(g, vals, (-1.0, 1.0))


def test_l1_norm_unit_box_is_exact():
    g = GridSpec(-2.0, 2.0, 4001)  # h = 1e-3
    f = sample(AnalyticPreset("box", (0.0, 1.0)), g)
    assert l1_norm(f) == pytest.approx(1.0, abs=1e-6)


def test_l1_norm_exponential_tail():
    g = GridSpec(-30.0, 30.0, 60001)  # h = 1e-3
    f = sample(AnalyticPreset("exp_right"), g)
    assert l1_norm(f) == pytest.approx(1.0, abs=1e-5)


def test_l1_norm_zero_function():
    g = GridSpec(-1.0, 1.0, 101)
    z = GridFunction(g, np.zeros(101), (0.0, 0.0))
    assert l1_norm(z) == 0.0


@pytest.mark.parametrize(
    "name,exact,C",
    [
        ("exp_right", 1.0, 0.2),
        ("exp_left", 1.0, 0.2),
        ("gaussian:1", math.sqrt(2 * math.pi), 0.05),
        ("box:0:1", 1.0, 0.05),
        ("box:-1:1", 2.0, 0.05),
        ("triangle:1", 1.0, 0.5),
    ],
)
def test_l1_error_bound_calibrated(name, exact, C, grid_default):
    # trapezoid error model: C*h^2 plus the truncated tail mass
    p = parse_preset(name)
    cutoff = 1e-12
    for g in (grid_default, GridSpec(-30.0, 30.0, 12001)):
        f = sample(p, g, cutoff)
        err = abs(l1_norm(f) - exact)
        assert err <= C * g.h**2 + cutoff * (g.hi - g.lo)


def test_l1_matches_adaptive_quadrature_oracle(grid_default):
    p = AnalyticPreset("gaussian", (1.0,))
    f = sample(p, grid_default)
    assert l1_norm(f) == pytest.approx(quad_l1(p), abs=1e-8)
    assert l1_norm(f) == pytest.approx(math.sqrt(2 * math.pi), abs=1e-8)


def test_simpson_rule_cross_check(grid_default):
    f = sample(AnalyticPreset("gaussian", (1.0,)), grid_default)
    assert l1_norm(f, rule="simpson") == pytest.approx(l1_norm(f), abs=1e-9)
    with pytest.raises(GridError):
        l1_norm(f, rule="midpoint")


def test_sup_norm_values(grid_mid):
    box = sample(AnalyticPreset("box", (0.0, 1.0)), grid_mid)
    assert sup_norm(box) == 1.0
    gauss = sample(AnalyticPreset("gaussian", (1.0,)), grid_mid)
    assert sup_norm(gauss) == 1.0  # peak at the origin
    assert sup_norm(linear_combine(-2.5, gauss, 0.0, gauss)) == pytest.approx(2.5)


def test_linear_combine_cancellation(battery_mid):
    f = battery_mid["gaussian:1"]
    z = linear_combine(1.0, f, -1.0, f)
    assert l1_norm(z) == 0.0
    assert sup_norm(z) == 0.0


def test_linear_combine_scaling(grid_mid):
    box = sample(AnalyticPreset("box", (0.0, 1.0)), grid_mid)
    doubled = linear_combine(2.0, box, 0.0, box)
    inside = (grid_mid.xs() > 0.1) & (grid_mid.xs() < 0.9)
    assert np.all(doubled.samples[inside] == 2.0)


def test_linear_combine_grid_mismatch():
    f = sample(AnalyticPreset("gaussian", (1.0,)), GridSpec(-8.0, 8.0, 257))
    g = sample(AnalyticPreset("gaussian", (1.0,)), GridSpec(-8.0, 8.0, 513))
    with pytest.raises(GridError):
        linear_combine(1.0, f, 1.0, g)


def test_triangle_inequality_on_random_combinations(battery_mid):
    rng = np.random.RandomState(7)
    funcs = list(battery_mid.values())
    for _ in range(20):
        f, g = rng.choice(len(funcs), 2)
        a, b = rng.uniform(-2, 2, 2)
        fa = linear_combine(a, funcs[f], 0.0, funcs[f])
        gb = linear_combine(b, funcs[g], 0.0, funcs[g])
        s = linear_combine(1.0, fa, 1.0, gb)
        assert l1_norm(s) <= l1_norm(fa) + l1_norm(gb) + 1e-12


def test_reflect_mirrors_exponential(grid_mid):
    f = sample(AnalyticPreset("exp_right"), grid_mid)
    g = sample(AnalyticPreset("exp_left"), grid_mid)
    assert np.array_equal(reflect(f).samples, g.samples)
    assert reflect(f).support == g.support


def test_reflect_involution_and_isometry(battery_mid):
    for f in battery_mid.values():
        rr = reflect(reflect(f))
        assert np.array_equal(rr.samples, f.samples)
        assert l1_norm(reflect(f)) == l1_norm(f)
        assert sup_norm(reflect(f)) == sup_norm(f)


def test_reflect_even_function_fixed(gaussian_mid):
    assert np.array_equal(reflect(gaussian_mid).samples, gaussian_mid.samples)


def test_reflect_needs_symmetric_grid():
    g = GridSpec(-1.0, 2.0, 31)
    f = GridFunction(g, np.zeros(31), (0.0, 0.0))
    with pytest.raises(GridError):
        reflect(f)


def test_even_part_gaussian_unchanged(gaussian_mid):
    assert np.allclose(even_part(gaussian_mid).samples, gaussian_mid.samples)


def test_even_part_exponential_closed_form(grid_mid):
    f = sample(AnalyticPreset("exp_right"), grid_mid)
    e = even_part(f)
    xs = grid_mid.xs()
    inside = np.abs(xs) <= 10
    expected = 0.5 * np.exp(-np.abs(xs[inside]))
    assert np.max(np.abs(e.samples[inside] - expected)) < 1e-12


def test_even_part_preserves_mass_and_reflection(battery_mid):
    for f in battery_mid.values():
        e = even_part(f)
        assert integrate(e) == pytest.approx(integrate(f), abs=1e-12)
        assert np.array_equal(even_part(reflect(f)).samples, e.samples)


def test_csv_round_trip_is_bit_exact(grid_mid):
    rng = np.random.RandomState(3)
    vals = np.zeros(grid_mid.n)
    vals[900:1200] = rng.randn(300) * math.pi
    f = GridFunction(grid_mid, vals, (grid_mid.xs()[900], grid_mid.xs()[1199]))
    g = GridFunction.from_csv(f.to_csv())
    assert np.array_equal(g.samples, f.samples)
    assert g.grid == f.grid


def test_json_round_trip_preserves_support(battery_mid):
    f = battery_mid["exp_right"]
    g = GridFunction.from_json(f.to_json())
    assert np.array_equal(g.samples, f.samples)
    assert g.support == f.support
    assert g.grid == f.grid


def test_csv_rejects_bad_header():
    with pytest.raises(GridError):
        GridFunction.from_csv("a,b\n1,2\n")


def test_resample_linear_interpolation(grid_mid):
    f = sample(AnalyticPreset("triangle", (1.0,)), grid_mid)
    target = GridSpec(-4.0, 4.0, 513)
    r = resample(f, target)
    direct = sample(AnalyticPreset("triangle", (1.0,)), target)
    assert np.max(np.abs(r.samples - direct.samples)) < 1e-9
