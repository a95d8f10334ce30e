import math
from fractions import Fraction

import pytest

from shearlab import certificates as cert
from shearlab.series import PowerSeries


def P(*cs, order=8):
    return PowerSeries.polynomial([Fraction(c) for c in cs], order, exact=True)


def test_starlike_boundary_is_certified():
    c = cert.starlike_coeff_certificate(P(0, 1, "1/2"))
    assert c.certified and c.exact_sum == 1 and c.bound == 1


def test_starlike_failure_reports_sum():
    c = cert.certify(P(0, 1, 1), "starlike:0")
    assert not c.certified and c.weighted_sum == 2 and c.bound == 1


def test_salagean_boundary():
    c = cert.salagean_coeff_certificate(P(0, 1, "1/8"), 3, 0)
    assert c.certified and c.exact_sum == 1 and c.class_claim.startswith("n_starlike(2")


def test_salagean_m1_matches_starlike():
    f = P(0, 1, "1/5", "-1/30")
    for a in (0, Fraction(1, 3), 0.25):
        s, t = cert.salagean_coeff_certificate(f, 1, a), cert.starlike_coeff_certificate(f, a)
        assert (s.verdict, s.weighted_sum, s.bound) == (t.verdict, t.weighted_sum, t.bound)


def test_starlike_order_alpha():
    # (2 - 1/2) * 1/3 = 1/2 <= 1/2
    c = cert.starlike_coeff_certificate(P(0, 1, "1/3"), Fraction(1, 2))
    assert c.certified and c.exact_sum == Fraction(1, 2)
    assert not cert.starlike_coeff_certificate(P(0, 1, "1/3"), Fraction(3, 5)).certified


def test_float_tolerance_at_boundary():
    f = PowerSeries.polynomial([0, 1, 0.5 + 1e-14], 4)
    assert cert.starlike_coeff_certificate(f).certified
    f = PowerSeries.polynomial([0, 1, 0.5 + 1e-9], 4)
    assert not cert.starlike_coeff_certificate(f).certified


def test_complex_coefficients_use_modulus():
    f = PowerSeries.polynomial([0, 1, 0.3j, -0.1], 4)
    c = cert.starlike_coeff_certificate(f)
    assert c.weighted_sum == pytest.approx(2 * 0.3 + 3 * 0.1)


def test_preconditions():
    with pytest.raises(ValueError, match="normalized"):
        cert.starlike_coeff_certificate(P(0, 2))
    with pytest.raises(ValueError):
        cert.starlike_coeff_certificate(P(0, 1), 1)
    with pytest.raises(ValueError):
        cert.salagean_coeff_certificate(P(0, 1), 0)


def test_n_cubed_preset():
    c = cert.weighted_coeff_certificate(P(0, 1, "1/8"), "n_cubed")
    assert c.certified and c.exact_sum == 1


def test_odd_preset():
    c = cert.weighted_coeff_certificate(P(0, 1, "1/3"), "odd")
    assert c.certified and c.exact_sum == 1


def test_n_squared_preset_theta_dependence():
    c = cert.weighted_coeff_certificate(P(0, 1, "1/4"), "n_squared", math.pi / 2)
    assert c.weighted_sum == 1 and c.bound == pytest.approx(0.5) and not c.certified
    c = cert.weighted_coeff_certificate(P(0, 1, "1/4"), "n_squared", math.pi / 6)
    assert c.bound == pytest.approx(1.0) and c.certified


def test_n_squared_theta_zero_is_infinite_bound():
    c = cert.weighted_coeff_certificate(P(0, 1, 5), "n_squared", 0.0)
    assert c.bound == math.inf and c.certified and "infinite" in c.note
    with pytest.raises(ValueError):
        cert.weighted_coeff_certificate(P(0, 1), "n_squared", 2.0)


def test_directional_preset_and_implied_starlike():
    f = P(0, 1, "1/4")
    c = cert.weighted_coeff_certificate(f, "directional", math.pi / 2)
    # sqrt(2*2*1*2 + 1) = 3
    assert c.weighted_sum == pytest.approx(0.75) and c.certified
    assert c.implied and c.implied[0].certified
    small = cert.weighted_coeff_certificate(f, "directional", 0.1)
    assert not small.implied
    with pytest.raises(ValueError):
        cert.weighted_coeff_certificate(f, "directional", math.pi)


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown weights_id"):
        cert.weighted_coeff_certificate(P(0, 1), "n_fourth")


def test_parse_class():
    assert cert.parse_class("starlike:1/2") == ("starlike", (Fraction(1, 2),))
    assert cert.parse_class("salagean:3:0") == ("salagean", (3, Fraction(0)))
    assert cert.parse_class("salagean:2") == ("salagean", (2, 0.0))
    assert cert.parse_class("odd") == ("odd", ())
    with pytest.raises(ValueError):
        cert.parse_class("salagean")
    with pytest.raises(ValueError, match="unknown class"):
        cert.parse_class("convex")


def test_to_dict():
    d = cert.starlike_coeff_certificate(P(0, 1, "1/2")).to_dict()
    assert d["verdict"] == "certified" and d["exact_sum"] == "1" and d["weights_id"] == "starlike"
