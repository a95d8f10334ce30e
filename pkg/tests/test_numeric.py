import cmath
import math

import numpy as np
import pytest

from shearlab import atlas, harmonic as hm, numeric as nu, series as ps
from shearlab.atlas import NamedHarmonic
from shearlab.harmonic import HarmonicMap
from shearlab.series import PowerSeries
from shearlab.theorems import eval_order


def poly(cs, order=16):
    return PowerSeries.polynomial(cs, order)


# grid --------------------------------------------------------------------


def test_default_grid():
    g = nu.DiskGrid()
    assert g.radii == nu.DEFAULT_RADII and g.angular_samples == 2048 and g.r_max == 0.995
    assert g.points().shape == (2048, 7)


def test_grid_parse_and_env(monkeypatch):
    g = nu.DiskGrid.parse("0.2,0.6:128")
    assert g.radii == (0.2, 0.6) and g.angular_samples == 128
    monkeypatch.setenv(nu.GRID_ENV, "0.5:64")
    assert nu.DiskGrid.from_env().radii == (0.5,)
    monkeypatch.delenv(nu.GRID_ENV)
    assert nu.DiskGrid.from_env() == nu.DiskGrid()


@pytest.mark.parametrize("text", ["0.5,0.3:128", "0.5,1.0:128", ":128", "0.5:32", "0,0.5:128"])
def test_grid_rejects(text):
    with pytest.raises(ValueError):
        nu.DiskGrid.parse(text)


# Re-condition ------------------------------------------------------------


def test_re_condition_koebe_and_half_plane():
    N = eval_order()
    K, L = atlas.from_name("K", N), atlas.from_name("L", N)
    rk = nu.re_min_on_grid(K.h, prefactor=1)
    rl = nu.re_min_on_grid(L.h, prefactor=1)
    assert rk.passed and rk.min_value > 0.5
    # L: the condition is Re(1 - z/2), minimal at z = 0.995
    assert rl.passed and rl.min_value == pytest.approx(1 - 0.995 / 2, abs=1e-9)
    assert rl.argmin == pytest.approx(0.995)
    # K: (1 - z/2 + z^2/6)/(1 - z) = 2/3/(1-z) + 1/3 - z/6
    g = nu.DiskGrid()
    z = g.points()
    vals = nu.re_values_on_grid(K.h, g, prefactor=1)
    np.testing.assert_allclose(vals, (2 / 3 / (1 - z) + 1 / 3 - z / 6).real, atol=1e-9)


def test_re_condition_requires_zero_constant():
    with pytest.raises(ValueError):
        nu.re_min_on_grid(poly([1, 1]), prefactor=1)


def test_re_condition_without_prefactor():
    rep = nu.re_min_on_grid(poly([0.75, 0.2]), grid=nu.DiskGrid.parse("0.5:64"))
    assert rep.min_value == pytest.approx(0.65) and rep.passed


def test_condition_series_levels():
    h = atlas.from_name("F_b:1/4", 24, exact=True).h
    assert nu.condition_series(h, 1, 1, 2) is h
    d = nu.condition_series(h, 1, 1, 1)
    assert d == ps.salagean_apply(h, 1)
    with pytest.raises(ValueError):
        nu.condition_series(h, 1, 1, 0)
    with pytest.raises(ValueError):
        nu.condition_series(h, 2, 1, 2)


def test_condition_series_F_b_reduces_to_one_plus_bz():
    b = 0.25
    N = eval_order(4)
    h = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), N).h
    S = nu.condition_series(h, 1, 1, 3)
    want = ps.cauchy_product(PowerSeries.polynomial([0, 1, b], N), ps.binomial_series(1, 2, N))
    assert S.truncate(200).max_abs_diff(want.truncate(200)) < 1e-12
    g = nu.DiskGrid()
    vals = nu.re_values_on_grid(S, g, prefactor=1)
    np.testing.assert_allclose(vals, (1 + b * g.points()).real, atol=1e-9)


@pytest.mark.parametrize("alpha", [0.0, 0.7, math.pi / 2, 2.4])
def test_slanted_condition_matches_dilatation_identity(alpha):
    N = eval_order()
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), N)
    u = cmath.exp(1j * alpha)
    g = nu.DiskGrid.parse("0.1,0.5,0.9,0.97:256")
    vals = nu.re_values_on_grid(nu.condition_series(f.h, u, 1, 1), g, prefactor=u)
    w = hm.dilatation(f, g.points())
    np.testing.assert_allclose(vals, (1 / (1 + np.conj(u) ** 2 * w)).real, atol=1e-9)


# n-starlike ---------------------------------------------------------------


def test_identity_is_n_starlike():
    rep = nu.n_starlike_probe(poly([0, 1]), 3, 0.99)
    assert rep.passed and rep.min_value == pytest.approx(1.0)


def test_ties_break_to_smallest_angle_then_radius():
    rep = nu.re_min_on_grid(poly([0.75]))
    assert rep.min_value == 0.75 and rep.argmin == nu.DEFAULT_RADII[0]


def test_starlike_probe_agrees_with_certificate():
    assert nu.n_starlike_probe(poly([0, 1, 0.5]), 0, 0.0).passed


def test_convexity_defect_of_z_plus_z2():
    # Re((1 + 4z)/(1 + 2z)) is negative just outside the pole z = -1/2, positive on |z| >= 0.9
    f = poly([0, 1, 1])
    rep = nu.n_starlike_probe(f, 1, 0.0, nu.DiskGrid.parse("0.45,0.6:1024"))
    assert not rep.passed and rep.argmin == pytest.approx(-0.45)
    assert not nu.n_starlike_probe(f, 1, 0.0).passed
    outer = nu.n_starlike_probe(f, 1, 0.0, nu.DiskGrid.parse("0.9,0.99:1024"))
    assert outer.passed and outer.min_value == pytest.approx(4.6 / 2.8)


def test_starlike_probe_flags_vanishing_denominator():
    # D f = z + 4 z^2 has a zero at z = -1/4
    rep = nu.n_starlike_probe(poly([0, 1, 2]), 1, 0.0, nu.DiskGrid(radii=(0.25,), angular_samples=64))
    assert not rep.passed and rep.invalid_points


# Jacobian -----------------------------------------------------------------


@pytest.mark.parametrize("a", [1, 2, 6, 10])
def test_jacobian_zero_f_a(a):
    F = hm.tilde_convolve(atlas.from_name(f"f_a:{a}", 16), poly([0, 1, 0.5]))
    scan = nu.jacobian_scan(F)
    assert scan.sign_changes
    z, d = scan.nearest_zero(-a / (a + 2))
    assert d < 1e-6
    for w in scan.refined_zeros:
        assert abs(hm.jacobian(F, w)) < 1e-9 and abs(w) < 0.995


@pytest.mark.parametrize("b", [0.1, 0.25, 0.5])
def test_jacobian_zero_F_b(b):
    F = hm.tilde_convolve(atlas.from_name(f"F_b:{b}", 16), poly([0, 1, 0.125]))
    assert nu.jacobian_scan(F).nearest_zero(-1 / (1 + b))[1] < 1e-6


@pytest.mark.parametrize("alpha", [0.0, math.pi / 4, math.pi / 3, math.pi / 2])
def test_jacobian_zero_slanted(alpha):
    F = hm.tilde_convolve(atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), 16), poly([0, 1, 0.5]))
    scan = nu.jacobian_scan(F)
    assert scan.nearest_zero(-cmath.exp(-1j * alpha) / 2)[1] < 1e-6
    assert scan.innermost_zero is not None


def test_jacobian_scan_without_zeros():
    scan = nu.jacobian_scan(atlas.from_name("L", 256), nu.DiskGrid.parse("0.5,0.9:256"))
    assert not scan.sign_changes and not scan.refined_zeros and scan.min_J > 0
    assert scan.nearest_zero(0) == (None, math.inf)


def test_jacobian_scan_is_deterministic():
    F = hm.tilde_convolve(atlas.from_name("f_a:2", 16), poly([0, 1, 0.5]))
    assert nu.jacobian_scan(F).to_dict() == nu.jacobian_scan(F).to_dict()


def test_sense_preserving_probe():
    assert nu.sense_preserving_probe(atlas.from_name("L", eval_order())).passed
    F = hm.tilde_convolve(atlas.from_name("f_a:1", 16), poly([0, 1, 0.5]))
    assert not nu.sense_preserving_probe(F).passed


# direction / injectivity ---------------------------------------------------


def test_direction_probe_half_plane():
    rep = nu.direction_convexity_probe(atlas.from_name("L", eval_order()), 0.0)
    assert rep.passed and all(r.monotone_segment_count == 2 for r in rep.per_radius)
    assert "monotone runs" in rep.note


def test_direction_probe_final_example():
    F = HarmonicMap(poly([0, 1, 5 / 16]), poly([0, 0, 1 / 16]))
    assert nu.direction_convexity_probe(F, 0.0).passed


def test_direction_probe_limacon_fails():
    f = HarmonicMap.analytic(poly([0, 1, 1]))
    rep = nu.direction_convexity_probe(f, math.pi / 2, radii=(0.99,))
    assert rep.verdict == nu.FAIL and rep.per_radius[0].monotone_segment_count > 2


def test_direction_probe_rotation_consistent():
    # rotating the image by e^{-i theta} (h -> e^{-i theta} h, g -> e^{i theta} g) maps direction theta to 0
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=0.6), 400)
    for theta in (0.3, math.pi / 2 - 0.6, 1.2):
        rot = HarmonicMap(f.h * cmath.exp(-1j * theta), f.g * cmath.exp(1j * theta))
        a = nu.direction_convexity_probe(f, theta, radii=(0.5, 0.9), samples=512)
        b = nu.direction_convexity_probe(rot, 0.0, radii=(0.5, 0.9), samples=512)
        assert a.verdict == b.verdict


def test_direction_probe_preconditions():
    f = HarmonicMap.analytic(poly([0, 1]))
    with pytest.raises(ValueError):
        nu.direction_convexity_probe(f, 0.0, samples=128)
    with pytest.raises(ValueError):
        nu.direction_convexity_probe(f, 0.0, radii=(1.0,))


def test_count_monotone_runs():
    t = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    assert nu.count_monotone_runs(np.sin(t), 1e-9)[0] == 2
    assert nu.count_monotone_runs(np.sin(3 * t), 1e-9)[0] == 6


def test_injectivity_identity_gap():
    f = HarmonicMap.analytic(poly([0, 1]))
    rep = nu.boundary_injectivity_probe(f, 0.5, samples=256)
    assert rep.min_value == pytest.approx(2 * 0.5 * math.sin(math.pi / 256), rel=1e-12) and rep.passed


def test_injectivity_half_plane_and_fold():
    assert nu.boundary_injectivity_probe(atlas.from_name("L", eval_order()), 0.9).passed
    F = hm.tilde_convolve(atlas.from_name("f_a:1", 16), poly([0, 1, 0.5]))
    rep = nu.boundary_injectivity_probe(F, 0.9)
    assert not rep.passed or rep.min_value < 1e-2


def test_injectivity_preconditions():
    f = HarmonicMap.analytic(poly([0, 1]))
    with pytest.raises(ValueError):
        nu.boundary_injectivity_probe(f, 0.9995)
    with pytest.raises(ValueError):
        nu.boundary_injectivity_probe(f, 0.5, samples=10000)


# truncation control -------------------------------------------------------


@pytest.mark.parametrize("name", ["K", "L", "f_alpha:1", "f_a:6", "F_b:0.25"])
def test_probe_stable_under_order_doubling(name):
    g = nu.DiskGrid.parse("0.5,0.9,0.99:512")
    growth = 4 if name.startswith("F_b") else 3
    N = ps.order_for_radius(0.99, growth)
    vals = [nu.sense_preserving_probe(atlas.from_name(name, n), g).min_value for n in (N, 2 * N)]
    assert abs(vals[0] - vals[1]) < 1e-6 * max(1.0, abs(vals[1]))


def test_emit_curve():
    t, w = nu.emit_curve(HarmonicMap.analytic(poly([0, 1])), 0.5, 4)
    np.testing.assert_allclose(w, 0.5 * np.exp(1j * t), atol=1e-15)


def test_fixed_order_64_is_too_short_near_the_boundary():
    # why probes use order_for_radius: N = 64 vs 128 disagree wildly at r = 0.99
    g = nu.DiskGrid.parse("0.99:512")
    vals = [nu.sense_preserving_probe(atlas.from_name("K", n), g).min_value for n in (64, 128)]
    assert abs(vals[0] - vals[1]) > 1.0
