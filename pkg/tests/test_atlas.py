import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from shearlab import atlas
from shearlab.atlas import KernelKind, NamedHarmonic

N = 20


def reals(s):
    assert all(c.im == 0 for c in s.coeffs)
    return [c.re for c in s.coeffs]


def test_koebe_closed_form_exact():
    K = atlas.named_harmonic(NamedHarmonic("koebe_K"), N, exact=True)
    assert reals(K.h)[1:] == [Fraction((k + 1) * (2 * k + 1), 6) for k in range(1, N + 1)]
    assert reals(K.g)[1:] == [Fraction((k - 1) * (2 * k - 1), 6) for k in range(1, N + 1)]


def test_koebe_shear_is_koebe_function():
    K = atlas.from_name("K", N, exact=True)
    assert reals(K.h - K.g) == [Fraction(k) for k in range(N + 1)]


def test_half_plane_closed_form_exact():
    L = atlas.named_harmonic(NamedHarmonic("halfplane_L"), N, exact=True)
    assert reals(L.h)[1:] == [Fraction(k + 1, 2) for k in range(1, N + 1)]
    assert reals(L.g)[1:] == [-Fraction(k - 1, 2) for k in range(1, N + 1)]


@pytest.mark.parametrize("alpha", [0.0, 0.3, math.pi / 4, 2.5, -1.0])
def test_slanted_closed_form(alpha):
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), N)
    k = np.arange(1, N + 1)
    h = np.exp(1j * (k - 1) * alpha) * (k + 1) / 2
    g = -np.exp(1j * (k + 1) * alpha) * (k - 1) / 2
    np.testing.assert_allclose(f.h.to_numpy()[1:], h, atol=1e-13)
    np.testing.assert_allclose(f.g.to_numpy()[1:], g, atol=1e-13)


def test_slanted_exact_at_quarter_turns():
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=math.pi / 2), 8, exact=True)
    want = [0] + [complex(1j ** (k - 1) * (k + 1) / 2) for k in range(1, 9)]
    np.testing.assert_allclose(f.h.to_numpy(), want, atol=0)
    with pytest.raises(ValueError):
        atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=0.3), 8, exact=True)


@pytest.mark.parametrize("a", [Fraction(-1), Fraction(-1, 2), Fraction(1), Fraction(6), Fraction(7, 3)])
def test_family_f_a_closed_form(a):
    f = atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), N, exact=True)
    assert reals(f.h)[2:] == [1 + 1 / a] * (N - 1)
    assert reals(f.g)[2:] == [1 / a] * (N - 1)
    assert reals(f.h)[:2] == [0, 1] and reals(f.g)[:2] == [0, 0]


@pytest.mark.parametrize("b", [Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1, 2)])
def test_family_F_b_shear(b):
    f = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), N, exact=True)
    assert reals(f.h - f.g) == [Fraction(k * k) for k in range(N + 1)]


def test_parameter_validation():
    with pytest.raises(ValueError):
        NamedHarmonic("family_f_a", a=0)
    with pytest.raises(ValueError):
        NamedHarmonic("family_f_a", a=-2)
    with pytest.raises(ValueError):
        NamedHarmonic("family_F_b", b=0.6)
    with pytest.raises(ValueError):
        NamedHarmonic("nope")
    with pytest.raises(ValueError):
        KernelKind("half_plane", alpha=2)
    with pytest.raises(ValueError):
        atlas.named_harmonic(NamedHarmonic("koebe_K"), 3)


def test_b_range_labels():
    assert NamedHarmonic("family_F_b", b=0.25).b_range == "open_half_interval"
    assert NamedHarmonic("family_F_b", b=-0.25).b_range == "closed_symmetric_interval"


def test_kernels():
    u = cmath.exp(0.7j)
    k = np.arange(1, 11)
    np.testing.assert_allclose(atlas.kernel(KernelKind("half_plane", alpha=u), 10).to_numpy()[1:], u ** (k - 1))
    np.testing.assert_allclose(atlas.kernel(KernelKind("starlike_kernel", alpha=u), 10).to_numpy()[1:], k * u ** (k - 1))
    np.testing.assert_allclose(atlas.kernel(KernelKind("log_kernel", alpha=u), 10).to_numpy()[1:], 1 / (k * u ** (k - 1)))
    assert reals(atlas.kernel(KernelKind("polylog", m=3), 4, exact=True)) == [0, 1, Fraction(1, 8), Fraction(1, 27), Fraction(1, 64)]
    assert reals(atlas.kernel(KernelKind("geometric_partial", n=2), 4, exact=True)) == [0, 1, 1, 0, 0]


def test_log_kernel_sums_to_log():
    z = 0.3 + 0.2j
    val = atlas.kernel(KernelKind("log_kernel", alpha=1), 80)(z)
    assert abs(val - cmath.log(1 / (1 - z))) < 1e-14


def test_koebe_evaluates_to_rational_form():
    z = 0.4 - 0.3j
    K = atlas.from_name("K", 200)
    h = (z - z**2 / 2 + z**3 / 6) / (1 - z) ** 3
    g = (z**2 / 2 + z**3 / 6) / (1 - z) ** 3
    assert abs(K(z) - (h + np.conj(g))) < 1e-12


def test_shear_built():
    from shearlab.harmonic import shear_slice

    rhs = atlas.kernel(KernelKind("half_plane"), 12)
    h = atlas.kernel(KernelKind("starlike_kernel"), 12)
    f = atlas.shear_built(rhs, 0.4, h)
    assert shear_slice(f, -0.4).max_abs_diff(rhs) < 1e-14
    with pytest.raises(ValueError):
        atlas.named_harmonic(NamedHarmonic("shear_built"), 12)


@pytest.mark.parametrize("text,value", [("0.3", 0.3), ("pi", math.pi), ("-pi/4", -math.pi / 4),
                                        ("2pi/3", 2 * math.pi / 3), ("3*pi/8", 3 * math.pi / 8), ("pi/2", math.pi / 2)])
def test_parse_angle(text, value):
    assert atlas.parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValueError):
        atlas.parse_angle("tau")


def test_from_name():
    assert atlas.from_name("F_b:1/4", 8, exact=True).exact
    assert atlas.from_name("lpartial:3", 8)[3] == 1
    assert abs(atlas.from_name("kernel:half:pi/2", 8)[2] - 1j) < 1e-15
    with pytest.raises(ValueError, match="unknown name"):
        atlas.from_name("Q", 8)
    with pytest.raises(ValueError):
        atlas.from_name("kernel:weird", 8)
