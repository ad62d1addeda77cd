import math

import numpy as np
import pytest

from gboehm import (
    DeltaSequence,
    GridFunction,
    GridSpec,
    ResolutionError,
    approx_identity_error,
    cosine_limit_error,
    integrate,
    l1_norm,
    linear_combine,
    make_family,
    sample,
    sharp_product_family,
    verify_axioms,
)
from gboehm.presets import AnalyticPreset, ConfigurationError

FINE_DYADIC = GridSpec(-0.25, 0.25, 4097)  # h = 2^-13, box edges land on nodes


@pytest.mark.parametrize("kind", ["triangle_sym", "bump_sym", "box_right"])
def test_unit_mass_exact_for_all_indices(grid_fine, kind):
    fam = make_family(kind, grid_fine)
    for n in range(1, 33):
        el = fam.element(n)
        assert abs(integrate(el) - 1.0) <= 1e-12  # cell averages telescope


def test_unit_mass_survives_offgrid_edges(grid_default):
    # 1/7 and 1/13 are nowhere near multiples of h = 0.01
    fam = make_family("box_right", grid_default)
    for n in (7, 13, 29):
        assert abs(integrate(fam.element(n)) - 1.0) <= 1e-12


def test_box_family_basic_shape(grid_default):
    fam = make_family("box_right", grid_default)
    el = fam.element(4)
    assert fam.support_radius(4) == pytest.approx(0.25, abs=grid_default.h)
    assert el.support[0] == 0.0
    assert abs(integrate(el) - 1.0) <= 1e-12


def test_nonnegative_families_have_unit_absolute_mass(grid_fine):
    for kind in ("triangle_sym", "bump_sym", "box_right"):
        fam = make_family(kind, grid_fine)
        for n in (1, 8, 32):
            assert l1_norm(fam.element(n)) == pytest.approx(1.0, abs=1e-12)


def test_resolution_floor(grid_default):
    fam = make_family("box_right", grid_default)
    with pytest.raises(ResolutionError):
        fam.element(100)  # 1/100 < 2h = 0.02
    fam.element(50)  # boundary case 1/50 == 2h is admitted
    assert fam.max_index() == 50
    with pytest.raises(ResolutionError):
        fam.element(0)


def test_verify_axioms_all_pass(grid_fine):
    rep = verify_axioms(make_family("triangle_sym", grid_fine), n_max=32)
    assert rep["pass"]
    assert rep["unit_mass"]["pass"]
    assert rep["uniform_bound"]["pass"]
    assert rep["shrinking_support"]["pass"]
    assert rep["prefix_verified"]
    radii = rep["shrinking_support"]["radii"]
    assert all(radii[i + 1] <= radii[i] for i in range(len(radii) - 1))
    assert radii[-1] <= 2.0 / 32


def test_verify_axioms_catches_wrong_mass(grid_fine):
    base = make_family("triangle_sym", grid_fine)
    doubled = DeltaSequence(
        "doubled", grid_fine, 2.0,
        lambda n: linear_combine(2.0, base.element(n), 0.0, base.element(n)))
    rep = verify_axioms(doubled, n_max=8)
    assert not rep["unit_mass"]["pass"]
    assert all(not r["pass"] for r in rep["unit_mass"]["per_n"])


def test_product_family_passes(grid_fine):
    d1 = make_family("triangle_sym", grid_fine)
    d2 = make_family("box_right", grid_fine)
    rep = verify_axioms(sharp_product_family(d1, d2), n_max=16, p1_tol=1e-8)
    assert rep["pass"]


def test_product_family_mass_and_support(grid_fine):
    d = make_family("box_right", grid_fine)
    prod = sharp_product_family(d, d)
    el = prod.element(8)
    assert abs(integrate(el) - 1.0) <= 1e-8
    a, b = el.support
    assert a >= -0.25 - 2 * grid_fine.h and b <= 0.25 + 2 * grid_fine.h
    assert prod.bound_M == 1.0


def test_product_with_zero_mass_family_fails(grid_fine):
    d = make_family("triangle_sym", grid_fine)
    zero = DeltaSequence(
        "zero", grid_fine, 1.0,
        lambda n: linear_combine(0.0, d.element(n), 0.0, d.element(n)))
    rep = verify_axioms(sharp_product_family(d, zero), n_max=4)
    assert not rep["unit_mass"]["pass"]


def test_approx_identity_gaussian(grid_fine):
    f = sample(AnalyticPreset("gaussian", (1.0,)), grid_fine)
    thresh = 0.01 * l1_norm(f)
    for kind in ("triangle_sym", "bump_sym", "box_right"):
        fam = make_family(kind, grid_fine)
        e8 = approx_identity_error(f, fam, 8)
        e64 = approx_identity_error(f, fam, 64)
        assert e64 < thresh
        assert e64 < e8


def test_approx_identity_zero_function(grid_fine):
    z = GridFunction(grid_fine, np.zeros(grid_fine.n), (0.0, 0.0))
    fam = make_family("triangle_sym", grid_fine)
    assert approx_identity_error(z, fam, 8) == 0.0
    assert approx_identity_error(z, fam, 64) == 0.0


def test_approx_identity_nonsymmetric_kernel(grid_fine):
    # one-sided kernels still act as approximate identities
    f = sample(AnalyticPreset("gaussian", (1.0,)), grid_fine)
    fam = make_family("box_right", grid_fine)
    assert approx_identity_error(f, fam, 64) < 0.02 * l1_norm(f)


def test_cosine_limit_box_closed_form_bound():
    fam = make_family("box_right", FINE_DYADIC)
    for n in (8, 16, 32, 64):
        err = cosine_limit_error(fam, n, 5.0, 2001)
        assert err <= 25.0 / (6.0 * n * n) + 1e-9  # |sinc(t/n) - 1| bound


def test_cosine_limit_improves_with_index(grid_fine):
    fam = make_family("triangle_sym", grid_fine)
    assert cosine_limit_error(fam, 64, 5.0) < cosine_limit_error(fam, 8, 5.0)


def test_cosine_limit_linear_bound(grid_fine):
    # |C(delta_n)(t) - 1| <= M * K * radius(n), the mean-value estimate
    for kind in ("triangle_sym", "bump_sym", "box_right"):
        fam = make_family(kind, grid_fine)
        for n in (8, 32):
            err = cosine_limit_error(fam, n, 5.0)
            assert err <= fam.bound_M * 5.0 * fam.support_radius(n) + 1e-9


def test_unknown_family_kind():
    with pytest.raises(ConfigurationError):
        make_family("hat", GridSpec(-1.0, 1.0, 257))


def test_family_needs_symmetric_grid():
    with pytest.raises(Exception):
        make_family("triangle_sym", GridSpec(0.0, 1.0, 257))
