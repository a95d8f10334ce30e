"""Property tests for the algebraic and numeric invariants."""

import cmath
import math
from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from shearlab import atlas, certificates as cert, harmonic as hm, numeric as nu, series as ps
from shearlab.atlas import KernelKind, NamedHarmonic
from shearlab.harmonic import HarmonicMap
from shearlab.series import PowerSeries

N = 16
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=30)
small = st.floats(min_value=-2, max_value=2, allow_nan=False)
complexes = st.builds(complex, small, small)


def exact_series(order=N, normalized=True):
    tail = st.lists(fractions, min_size=0, max_size=order - 1)
    if normalized:
        return tail.map(lambda t: PowerSeries.polynomial([0, 1, *t], order, exact=True))
    return st.lists(fractions, min_size=1, max_size=order + 1).map(lambda c: PowerSeries.polynomial(c, order, exact=True))


def float_series(order=N):
    return st.lists(complexes, min_size=0, max_size=order - 1).map(lambda t: PowerSeries.polynomial([0, 1, *t], order))


fast = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(exact_series(), st.integers(-3, 3), st.integers(-3, 3))
def test_salagean_composition(f, n, m):
    assert ps.salagean_apply(ps.salagean_apply(f, n), m) == ps.salagean_apply(f, n + m)


@fast
@given(exact_series(), exact_series(), st.integers(0, 3), st.integers(0, 3))
def test_salagean_distributes_over_hadamard(f, g, n, m):
    assert ps.salagean_apply(ps.hadamard(f, g), n + m) == ps.hadamard(ps.salagean_apply(f, n), ps.salagean_apply(g, m))


@fast
@given(exact_series(normalized=False), exact_series(normalized=False), exact_series(normalized=False))
def test_hadamard_commutative_associative(f, g, k):
    assert ps.hadamard(f, g) == ps.hadamard(g, f)
    assert ps.hadamard(ps.hadamard(f, g), k) == ps.hadamard(f, ps.hadamard(g, k))


@fast
@given(exact_series(), st.integers(1, N))
def test_identity_and_partial_sum(f, p):
    assert ps.hadamard(f, PowerSeries.identity(N, exact=True)) == f
    lp = atlas.kernel(KernelKind("geometric_partial", n=p), N, exact=True)
    assert ps.partial_sum(f, p) == ps.hadamard(f, lp)


@fast
@given(float_series(), float_series(), st.floats(0, 0.95), st.floats(0, 2 * math.pi))
def test_evaluate_linear(f, g, r, t):
    z = r * cmath.exp(1j * t)
    lhs = ps.evaluate(f + g, z)
    rhs = ps.evaluate(f, z) + ps.evaluate(g, z)
    scale = np.sum(np.abs(f.to_numpy())) + np.sum(np.abs(g.to_numpy()))
    assert abs(lhs - rhs) <= 8 * np.finfo(float).eps * scale


@fast
@given(float_series(), float_series(), float_series(), st.integers(1, N))
def test_tilde_convolution_commutes_with_partial_sums(h, g, phi, p):
    f = HarmonicMap(h, g)
    lhs = hm.harmonic_partial_sum(hm.tilde_convolve(f, phi), p)
    rhs = hm.tilde_convolve(f, ps.partial_sum(phi, p))
    assert lhs.h == rhs.h and lhs.g == rhs.g


@fast
@given(float_series(), st.lists(complexes, min_size=0, max_size=N - 2),
       st.floats(0, 0.9), st.floats(0, 2 * math.pi))
def test_jacobian_dilatation_identity(h, gtail, r, t):
    f = HarmonicMap(h, PowerSeries.polynomial([0, 0, *gtail], N))
    z = r * cmath.exp(1j * t)
    hp = ps.evaluate(ps.derivative(h), z)
    assume(abs(hp) > 1e-3)
    J = hm.jacobian(f, z)
    w = hm.dilatation(f, z)
    assert abs(J - abs(hp) ** 2 * (1 - abs(w) ** 2)) <= 1e-10 * max(1.0, abs(hp) ** 2 * (1 + abs(w) ** 2))


@fast
@given(st.floats(-1 + 1e-3, 50).filter(lambda a: abs(a) > 1e-2), st.floats(0, 0.98), st.floats(0, 2 * math.pi))
def test_ex_2_11_jacobian_formula(a, r, t):
    F = hm.tilde_convolve(atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), 8), PowerSeries.polynomial([0, 1, 0.5], 8))
    z = r * cmath.exp(1j * t)
    want = 1 + (2 + a) / a * r * r + 2 * (1 + a) / a * z.real
    assert abs(hm.jacobian(F, z) - want) <= 1e-10 * max(1.0, abs(want), abs(2 + a) / abs(a))


@fast
@given(st.floats(-2 * math.pi, 2 * math.pi), st.floats(0, 0.98), st.floats(0, 2 * math.pi))
def test_ex_2_18_jacobian_formula(alpha, r, t):
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), 8)
    F = hm.tilde_convolve(f, PowerSeries.polynomial([0, 1, 0.5], 8))
    z = r * cmath.exp(1j * t)
    assert abs(hm.jacobian(F, z) - (1 + 2 * r * r + 3 * (cmath.exp(1j * alpha) * z).real)) <= 1e-10


@fast
@given(st.floats(-2 * math.pi, 2 * math.pi))
def test_slanted_shear_identity(alpha):
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), 64)
    lhs = f.h + f.g * cmath.exp(-2j * alpha)
    rhs = atlas.kernel(KernelKind("half_plane", alpha=cmath.exp(1j * alpha)), 64)
    assert lhs.max_abs_diff(rhs) <= 1e-12


@fast
@given(st.fractions(min_value=-1, max_value=20, max_denominator=50).filter(lambda a: a != 0),
       st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(1, 2), max_denominator=50))
def test_named_structural_identities(a, b):
    M = 24
    z_1 = PowerSeries.from_function(lambda k: 1 if k else 0, M, exact=True)
    koebe = PowerSeries.from_function(lambda k: k, M, exact=True)
    fa = atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), M, exact=True)
    Fb = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), M, exact=True)
    K = atlas.from_name("K", M, exact=True)
    L = atlas.from_name("L", M, exact=True)
    assert fa.h - fa.g == z_1
    # (z + z^2)/(1 - z)^3
    assert Fb.h - Fb.g == PowerSeries.from_function(lambda k: k * k, M, exact=True)
    assert K.h - K.g == koebe and L.h - L.g == koebe


@fast
@given(st.floats(0, 2 * math.pi), st.integers(1, 4))
def test_kernels_match_rational_expansions(t, p):
    u = cmath.exp(1j * t)
    M = 64
    want = ps.cauchy_product(PowerSeries.polynomial([0, 1], M), ps.binomial_series(u, 1 if p % 2 else 2, M))
    kind = "half_plane" if p % 2 else "starlike_kernel"
    assert atlas.kernel(KernelKind(kind, alpha=u), M).max_abs_diff(want) <= 1e-12 * M


@fast
@given(exact_series(order=8), st.fractions(0, Fraction(9, 10), max_denominator=20), st.fractions(0, Fraction(9, 10), max_denominator=20))
def test_starlike_certificate_monotone_in_alpha(f, a1, a2):
    lo, hi = min(a1, a2), max(a1, a2)
    if cert.starlike_coeff_certificate(f, hi).certified:
        assert cert.starlike_coeff_certificate(f, lo).certified


@fast
@given(exact_series(order=8), st.fractions(0, Fraction(9, 10), max_denominator=20))
def test_salagean_m1_equals_starlike(f, a):
    s, t = cert.salagean_coeff_certificate(f, 1, a), cert.starlike_coeff_certificate(f, a)
    assert (s.verdict, s.exact_sum, s.bound) == (t.verdict, t.exact_sum, t.bound)


@settings(max_examples=150, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=6), st.integers(1, 4), st.floats(0, 0.9), st.floats(0.3, 1.0))
def test_certificate_soundness(raw, m, alpha, fill):
    n = np.arange(2, len(raw) + 2)
    c = np.array(raw)
    w = n.astype(float) ** (m - 1) * (n - alpha)
    total = float(np.sum(w * np.abs(c)))
    assume(total > 0)
    f = PowerSeries.polynomial([0, 1, *(c * fill * (1 - alpha) / total)], 16)
    assert cert.salagean_coeff_certificate(f, m, alpha).certified
    grid = nu.DiskGrid(radii=(0.3, 0.6, 0.9, 0.99), angular_samples=512)
    rep = nu.n_starlike_probe(f, m - 1, alpha, grid)
    assert rep.min_value >= alpha - 1e-6


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 2 * math.pi))
def test_direction_probe_rotation_consistency(theta):
    f = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=0.8), 400)
    rot = HarmonicMap(f.h * cmath.exp(-1j * theta), f.g * cmath.exp(1j * theta))
    kw = dict(radii=(0.5, 0.9), samples=512)
    assert nu.direction_convexity_probe(f, theta, **kw).verdict == nu.direction_convexity_probe(rot, 0.0, **kw).verdict


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 0.49))
def test_counterexample_zero_inside_for_sampled_b(b):
    from shearlab import theorems as th

    rep = th.run_scenario("ex-2.12", {"b": b})
    assert rep.consistent
