"""Scenario registry: each result packaged as construct -> hypotheses -> conclusions.

A scenario builds concrete inputs, runs hypothesis checks (coefficient
certificates, series identities, Re-condition minima) and then conclusion
checks (Jacobian sign, circle-image injectivity, direction probes).  The
overall verdict is

* ``consistent_with_paper`` when every hypothesis passes and every conclusion
  matches its expectation,
* ``inconsistent`` when a conclusion definitely contradicts its expectation,
* ``inconclusive`` otherwise (a hypothesis failed on the chosen instance or a
  probe could not decide).

Conventions used throughout:

* directions follow the shear rule: a slice ``h - e^{-2 i beta} g`` governs the
  direction ``-beta``, i.e. ``harmonic.shear_slice(f, -beta)``;
* "for all beta with |beta| <= theta" is sampled at ``-theta, -theta/2, 0,
  theta/2, theta``;
* "for all p" is sampled at ``p = 2..8``;
* an abstract hypothesis ``phi in S_n`` is instantiated either by the polynomial
  ``f_{n+2,3} = z + z^2/2^(n+2) + z^3/3^(n+2)`` (certified by coefficients) or
  by the polylogarithm ``f_j`` whose membership in ``S_{j+1}`` follows from
  ``D^{j+1} f_j = z/(1-z)^2``.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import atlas
from . import certificates as cert
from . import harmonic as hm
from . import numeric as nu
from . import series as ps
from .atlas import KernelKind, NamedHarmonic
from .harmonic import HarmonicMap
from .series import PowerSeries

CONSISTENT = "consistent_with_paper"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"

HYPOTHESIS = "hypothesis"
CONCLUSION = "conclusion"

HOLDS = "holds"
COUNTEREXAMPLE = "counterexample"

P_RANGE = tuple(range(2, 9))
INJECTIVITY_RADII = (0.5, 0.9, 0.995)
ALL_DIRECTIONS = tuple(k * math.pi / 8 for k in range(8))
IDENTITY_TOL = 1e-10
ZERO_TOL = 1e-6
R_PROBE = 0.995

_PASS, _FAIL, _INC = nu.PASS, nu.FAIL, nu.INCONCLUSIVE


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # int | real | angle | text
    default: object
    doc: str = ""

    def convert(self, value):
        if value is None:
            return None
        if self.kind == "int":
            return int(value)
        if self.kind == "angle":
            return atlas.parse_angle(value) if isinstance(value, str) else float(value)
        if self.kind == "real":
            return float(Fraction(value)) if isinstance(value, str) else float(value)
        return str(value)

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "default": self.default, "doc": self.doc}


@dataclass(frozen=True)
class ScenarioDescriptor:
    id: str
    title: str
    params: tuple[Param, ...]
    hypothesis_checks: tuple[str, ...]
    conclusion_checks: tuple[str, ...]
    expected: str = HOLDS
    notes: str = ""

    def defaults(self) -> dict:
        return {p.name: p.convert(p.default) for p in self.params}

    def to_dict(self) -> dict:
        doc = {
            "id": self.id,
            "title": self.title,
            "params": [p.to_dict() for p in self.params],
            "hypothesis_checks": list(self.hypothesis_checks),
            "conclusion_checks": list(self.conclusion_checks),
            "expected": self.expected,
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    kind: str
    outcome: str  # pass | fail | inconclusive
    expected_pass: bool = True
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == _PASS

    @property
    def matches(self) -> bool | None:
        if self.outcome == _INC:
            return None
        return self.passed == self.expected_pass

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "outcome": self.outcome,
            "expected_pass": self.expected_pass,
            "matches": self.matches,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ScenarioReport:
    id: str
    params: dict
    checks: tuple[CheckOutcome, ...]
    overall: str
    elapsed: float = 0.0

    @property
    def consistent(self) -> bool:
        return self.overall == CONSISTENT

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
            "elapsed_s": round(self.elapsed, 4),
        }


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, Fraction):
        return str(v)
    return v


def _overall(checks) -> str:
    if any(c.kind == CONCLUSION and c.matches is False for c in checks):
        return INCONSISTENT
    if all(c.matches for c in checks):
        return CONSISTENT
    return INCONCLUSIVE


# ---------------------------------------------------------------------------
# check builders


def _bool(ok: bool) -> str:
    return _PASS if ok else _FAIL


def _cert_check(name: str, c: cert.Certificate) -> CheckOutcome:
    return CheckOutcome(name, HYPOTHESIS, _bool(c.certified), True, c.to_dict())


def _probe_check(name: str, kind: str, report, expected: bool = True) -> CheckOutcome:
    return CheckOutcome(name, kind, report.verdict, expected, report.to_dict())


def _identity_check(name: str, lhs: PowerSeries, rhs: PowerSeries, kind: str = HYPOTHESIS,
                    tol: float = IDENTITY_TOL, scale: np.ndarray | None = None) -> CheckOutcome:
    """Coefficient-wise ``lhs == rhs``.

    The error at index ``k`` is measured relative to ``max(1, |rhs_k|, scale_k)``;
    ``scale`` carries operand magnitudes when ``lhs`` is a cancelling combination.
    """
    a, b = lhs.to_numpy(), rhs.to_numpy()
    n = min(a.size, b.size)
    a, b = a[:n], b[:n]
    ref = np.maximum(1.0, np.abs(b))
    if scale is not None:
        ref = np.maximum(ref, np.asarray(scale)[:n])
    err = float(np.max(np.abs(a - b) / ref))
    return CheckOutcome(name, kind, _bool(err <= tol), True, {"max_rel_error": err, "tolerance": tol, "order": n - 1})


def _slice_check(name: str, f: HarmonicMap, theta: float, rhs: PowerSeries, kind: str = HYPOTHESIS) -> CheckOutcome:
    """``h - e^{2i theta} g == rhs``, tolerance scaled by ``|h_k| + |g_k|``."""
    scale = np.abs(f.h.to_numpy()) + np.abs(f.g.to_numpy())
    return _identity_check(name, hm.shear_slice(f, theta), rhs, kind, scale=scale)


def _exact_check(name: str, got, want, kind: str = HYPOTHESIS) -> CheckOutcome:
    ok = list(got) == list(want)
    return CheckOutcome(name, kind, _bool(ok), True, {"got": [str(x) for x in got], "want": [str(x) for x in want]})


def _re_check(name: str, q: PowerSeries, prefactor: complex, grid: nu.DiskGrid) -> CheckOutcome:
    rep = nu.re_min_on_grid(q, prefactor=prefactor, grid=grid)
    return _probe_check(name, HYPOTHESIS, rep)


def _direction_check(label: str, F: HarmonicMap, theta: float, grid: nu.DiskGrid) -> CheckOutcome:
    rep = nu.direction_convexity_probe(F, theta, radii=grid.radii, samples=grid.angular_samples)
    return CheckOutcome(f"{label}: convex in direction {theta:.6g}", CONCLUSION, rep.verdict, True, rep.to_dict())


def _univalent_convex(label: str, F: HarmonicMap, directions, grid: nu.DiskGrid) -> list[CheckOutcome]:
    """Sense-preserving on the grid, simple circle images, and the direction probes."""
    out = [_probe_check(f"{label}: sense-preserving (J > 0)", CONCLUSION, nu.sense_preserving_probe(F, grid))]
    for r in INJECTIVITY_RADII:
        rep = nu.boundary_injectivity_probe(F, r, samples=grid.angular_samples)
        out.append(_probe_check(f"{label}: injective on |z|={r}", CONCLUSION, rep))
    out.extend(_direction_check(label, F, th, grid) for th in directions)
    return out


def _counterexample_checks(label: str, F: HarmonicMap, z0: complex, grid: nu.DiskGrid) -> list[CheckOutcome]:
    scan = nu.jacobian_scan(F, grid)
    found, dist = scan.nearest_zero(z0)
    inside = found is not None and abs(found) < grid.r_max
    detail = scan.to_dict() | {"expected_zero": [z0.real, z0.imag], "distance": dist}
    sense = CheckOutcome(f"{label}: sense-preserving on the disk", CONCLUSION,
                         _bool(not scan.sign_changes and scan.min_J > 0), False, {"min_J": scan.min_J})
    located = CheckOutcome(f"{label}: Jacobian zero at {z0:.6g}", CONCLUSION,
                           _bool(inside and dist <= ZERO_TOL), True, detail)
    return [sense, located]


# ---------------------------------------------------------------------------
# instances


_EVAL_ORDERS: dict[int, int] = {}


def eval_order(growth: int = 3) -> int:
    """Truncation order accurate to ~1e-12 at ``|z| = 0.995`` for coefficients ~ ``k^(growth-1)``."""
    if growth not in _EVAL_ORDERS:
        _EVAL_ORDERS[growth] = ps.order_for_radius(R_PROBE, growth=growth)
    return _EVAL_ORDERS[growth]


def fmn(m: int, n: int, order: int | None = None, exact: bool = False) -> PowerSeries:
    """Partial sum ``f_{m,n} = sum_{l<=n} z^l / l^m``."""
    order = max(n, 8) if order is None else order
    one = Fraction(1) if exact else 1.0
    return PowerSeries.from_function(lambda k: 0 if k == 0 or k > n else one / k**m, order, exact=exact)


def polylog(j: int, order: int) -> PowerSeries:
    return atlas.kernel(KernelKind("polylog", m=j), order)


def z_series(order: int) -> PowerSeries:
    return PowerSeries.polynomial([0, 1], order)


def poly(coeffs, order: int | None = None) -> PowerSeries:
    """Exact polynomial from a list of rationals (floats go through ``str``)."""
    cs = [Fraction(str(c)) if isinstance(c, float) else Fraction(c) for c in coeffs]
    return PowerSeries.polynomial(cs, order, exact=True)


def koebe(order: int, unit: complex = 1) -> PowerSeries:
    return atlas.kernel(KernelKind("starlike_kernel", alpha=unit), order)


def half_plane(order: int, unit: complex = 1) -> PowerSeries:
    return atlas.kernel(KernelKind("half_plane", alpha=unit), order)


def log_series(order: int) -> PowerSeries:
    return atlas.kernel(KernelKind("log_kernel", alpha=1), order)


def _membership_by_certificate(phi: PowerSeries, level: int, label: str = "phi") -> CheckOutcome:
    return _cert_check(f"{label} in S_{level} (coefficient certificate)", cert.salagean_coeff_certificate(phi, level + 1, 0))


def _polylog_membership(j: int, level: int) -> CheckOutcome:
    """``f_j in S_level`` for ``level <= j+1`` via the exact identity ``D^{j+1} f_j = z/(1-z)^2``."""
    order = 24
    f = atlas.kernel(KernelKind("polylog", m=j), order, exact=True)
    got = ps.salagean_apply(f, j + 1).coeffs
    want = atlas.kernel(KernelKind("starlike_kernel", alpha=1), order, exact=True).coeffs
    ok = list(got) == list(want) and level <= j + 1
    return CheckOutcome(
        f"phi = polylog({j}) in S_{level}: D^{j + 1} phi = z/(1-z)^2 and S_{j + 1} is contained in S_{level}",
        HYPOTHESIS,
        _bool(ok),
        True,
        {"identity_order": order, "membership_level": j + 1, "required_level": level},
    )


def _starlike_probe_check(name: str, f: PowerSeries, level: int, grid: nu.DiskGrid, kind: str = HYPOTHESIS) -> CheckOutcome:
    return _probe_check(name, kind, nu.n_starlike_probe(f, level, 0.0, grid))


def _directions_for(theta: float, offset: float = 0.0) -> tuple[float, ...]:
    """Directions ``-beta`` for sampled ``beta`` with ``|beta + offset| <= theta``."""
    betas = [-offset + s * theta for s in (-1.0, -0.5, 0.0, 0.5, 1.0)]
    return tuple(-b for b in betas)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


# ---------------------------------------------------------------------------
# scenarios of the convolution section


def _lem_2_1(P, grid):
    n, m = P["n"], P["m"]
    _require(n >= 0 and m >= 0 and n + m >= 1, "need n, m >= 0 and n + m >= 1")
    f, g = fmn(n + 2, 3), fmn(m + 2, 3)
    fg = ps.hadamard(f, g)
    return [
        _membership_by_certificate(f, n, "f"),
        _membership_by_certificate(g, m, "g"),
        _starlike_probe_check(f"f*g in S_{n + m - 1}", fg, n + m - 1, grid, CONCLUSION),
    ]


def _shear_z_map(gamma: float, h: PowerSeries) -> HarmonicMap:
    return atlas.shear_built(z_series(h.order), gamma, h)


def _thm_2_5(P, grid):
    gamma, beta = P["gamma"], P["beta"]
    N = 16
    h = koebe(N)
    f = _shear_z_map(gamma, h)
    phi = poly([0, 1, Fraction(1, 16)], N)
    F = hm.tilde_convolve(f, phi)
    slice_beta = ps.hadamard(hm.shear_slice(f, -beta), phi)
    return [
        _slice_check("h - e^{-2i gamma} g = z", f, -gamma, z_series(N)),
        _membership_by_certificate(ps.hadamard(h, phi), 2, "h*phi"),
        _membership_by_certificate(slice_beta, 1, "(h - e^{-2i beta} g)*phi"),
        *_univalent_convex("f~*phi", F, [-beta], grid),
    ]


def _cor_2_6(P, grid):
    theta, gamma, c = P["theta"], P["gamma"], P["c"]
    _require(0 <= theta <= math.pi / 2, "theta must lie in [0, pi/2]")
    N = 16
    phi = poly([0, 1, c], N)
    f = _shear_z_map(gamma, half_plane(N))
    F = hm.tilde_convolve(f, phi)
    expect = HarmonicMap(phi.to_float(), (phi.to_float() - z_series(N)) * cmath.exp(2j * gamma))
    return [
        _membership_by_certificate(phi, 2),
        _cert_check("sum n^2|a_n| <= 1/sqrt(2(1-cos 2 theta))", cert.weighted_coeff_certificate(phi, "n_squared", theta)),
        _identity_check("f~*phi = phi + conj(e^{2i gamma}(phi - z))", F.g, expect.g),
        *_univalent_convex("f~*phi", F, _directions_for(theta, gamma), grid),
    ]


def _rem_2_1(P, grid):
    gamma, c = P["gamma"], P["c"]
    N = 16
    phi = poly([0, 1, c], N)
    F = hm.tilde_convolve(_shear_z_map(gamma, half_plane(N)), phi)
    return [
        _membership_by_certificate(phi, 2),
        _cert_check("sum n^2|a_n| <= 1/2", cert.weighted_coeff_certificate(phi, "n_squared", math.pi / 2)),
        *_univalent_convex("phi + conj(e^{2i gamma}(phi - z))", F, ALL_DIRECTIONS, grid),
    ]


def _rem_2_2(P, grid):
    gamma = P["gamma"]
    N = 16
    phi = poly([0, 1, Fraction(P["c2"]).limit_denominator(10**9), Fraction(P["c3"]).limit_denominator(10**9)], N)
    F = hm.tilde_convolve(_shear_z_map(gamma, half_plane(N)), phi)
    return [
        _cert_check("sum n^3|a_n| <= 1", cert.weighted_coeff_certificate(phi, "n_cubed")),
        _cert_check("implied: sum n^2|a_n| <= 1/2", cert.weighted_coeff_certificate(phi, "n_squared", math.pi / 2)),
        _membership_by_certificate(phi, 2),
        *_univalent_convex("phi + conj(e^{2i gamma}(phi - z))", F, ALL_DIRECTIONS, grid),
    ]


def _log_shear(h: PowerSeries, gamma: float) -> HarmonicMap:
    """``(h, g)`` with ``h - e^{-2i gamma} g = h * log 1/(1-z)``."""
    return atlas.shear_built(ps.hadamard(h, log_series(h.order)), gamma, h.to_float())


def _thm_2_9(P, grid):
    gamma, beta = P["gamma"], P["beta"]
    N = 16
    h = poly([0, 1, Fraction(1, 3)], N)
    phi = poly([0, 1, Fraction(1, 8)], N)
    f = _log_shear(h, gamma)
    F = hm.tilde_convolve(f, phi)
    slice_beta = hm.shear_slice(f, -beta)
    return [
        _slice_check("h - e^{-2i gamma} g = h * log 1/(1-z)", f, -gamma, ps.hadamard(h, log_series(N))),
        _cert_check("h starlike", cert.starlike_coeff_certificate(h)),
        _membership_by_certificate(phi, 2),
        _cert_check("h - e^{-2i beta} g starlike (coefficient certificate)", cert.starlike_coeff_certificate(slice_beta)),
        *_univalent_convex("f~*phi", F, [-gamma, -beta], grid),
    ]


def _cor_2_10_1(P, grid):
    N = eval_order()
    h = koebe(N)
    phi = fmn(4, 3, N)
    F = hm.tilde_convolve(_log_shear(h, 0.0), phi).truncate(16)
    return [
        _starlike_probe_check("h = z/(1-z)^2 starlike (Re zh'/h > 0 on the grid)", h, 0, grid),
        _membership_by_certificate(phi, 2),
        *_univalent_convex("f~*phi", F, [0.0], grid),
    ]


def _cor_2_10_23(P, grid, item: int):
    theta, c = P["theta"], P["c"]
    _require(0 <= theta < math.pi, "theta must lie in [0, pi)")
    N = 16
    h = poly([0, 1, c], N)
    phi = fmn(4, 3, N)
    f = _log_shear(h, 0.0)
    F = hm.tilde_convolve(f, phi)
    c_dir = cert.weighted_coeff_certificate(h, "directional", theta)
    checks = [_cert_check("sum |a_n| sqrt(2n(n-1)(1-cos 2 theta)+1) <= 1", c_dir)]
    if item == 2:
        checks.append(_cert_check("h starlike", cert.starlike_coeff_certificate(h)))
    else:
        _require(math.cos(2 * theta) <= 0.25 + 1e-15, "item 3 needs cos 2 theta <= 1/4")
        implied = c_dir.implied[0] if c_dir.implied else cert.starlike_coeff_certificate(h)
        checks.append(_cert_check("implied: sum n|a_n| <= 1 (h starlike)", implied))
    checks.append(_membership_by_certificate(phi, 2))
    for beta in (-theta, -theta / 2, 0.0, theta / 2, theta):
        sl = hm.shear_slice(f, -beta)
        checks.append(_cert_check(f"h - e^{{-2i beta}} g starlike at beta={beta:.6g}", cert.starlike_coeff_certificate(sl)))
    checks.extend(_univalent_convex("f~*phi", F, _directions_for(theta), grid))
    return checks


def _rem_2_3(P, grid):
    N = 16
    h = poly([0, 1, Fraction(1, 6), Fraction(1, 10)], N)
    phi = fmn(4, 3, N)
    F = hm.tilde_convolve(_log_shear(h, 0.0), phi)
    return [
        _cert_check("sum (2n-1)|a_n| <= 1", cert.weighted_coeff_certificate(h, "odd")),
        _membership_by_certificate(phi, 2),
        *_univalent_convex("f~*phi", F, ALL_DIRECTIONS, grid),
    ]


def _ex_2_10a(P, grid):
    N = eval_order()
    h = koebe(N)
    g = h - half_plane(N)
    lg = log_series(N)
    F = hm.tilde_convolve(HarmonicMap(h, g), lg)
    return [
        _identity_check("g = h - h * log 1/(1-z)", g, h - ps.hadamard(h, lg)),
        _starlike_probe_check("h = z/(1-z)^2 starlike", h, 0, grid),
        _identity_check("phi = log 1/(1-z) in S_2: D^2 phi = z/(1-z)^2", ps.salagean_apply(lg, 2), koebe(N)),
        _identity_check("f~*phi = z/(1-z) + conj(z/(1-z) - log 1/(1-z))", F.g, half_plane(N) - lg, CONCLUSION),
        *_univalent_convex("f~*phi", F, [0.0], grid),
    ]


def _ex_2_10b(P, grid):
    N = 16
    h = poly([0, 1, Fraction(1, 3)], N)
    g = poly([0, 0, Fraction(1, 6)], N)
    lg = atlas.kernel(KernelKind("log_kernel", alpha=1), N, exact=True)
    F = hm.tilde_convolve(HarmonicMap(h, g), lg)
    return [
        _exact_check("g = h - h * log 1/(1-z)", g.coeffs, (h - ps.hadamard(h, lg)).coeffs),
        _cert_check("sum (2n-1)|a_n| <= 1", cert.weighted_coeff_certificate(h, "odd")),
        _exact_check("f~*phi = z + z^2/6 + conj(z^2/12)", F.h.coeffs[:3] + F.g.coeffs[:3],
                     [0, 1, Fraction(1, 6), 0, 0, Fraction(1, 12)], CONCLUSION),
        *_univalent_convex("f~*phi", F, ALL_DIRECTIONS, grid),
    ]


def _kernel_power_map(n: int, a_unit: complex, g_unit: complex, beta: float, b: float, order: int):
    """``h`` with condition series ``(z + b a z^2)/(1 - a z)^2`` and ``h - e^{-2i beta} g`` the kernel power."""
    q = ps.cauchy_product(PowerSeries.polynomial([0, 1, b * a_unit], order), ps.binomial_series(a_unit, 2, order))
    kpow = ps.hadamard_power(koebe(order, g_unit), n - 2)
    h = ps.hadamard(kpow, q)
    rhs = ps.hadamard(koebe(order, a_unit), kpow)
    return atlas.shear_built(rhs, beta, h), q, rhs


def _thm_2_19(P, grid):
    n, alpha, gamma, beta, b = P["n"], P["alpha"], P["gamma"], P["beta"], P["b"]
    delta = beta if P["delta"] is None else P["delta"]
    _require(n >= 1, "n must be >= 1")
    _require(abs(b) <= 0.5, "|b| <= 1/2 keeps the Re-condition above 1/2")
    N = eval_order(max(3, n + 1))
    a_u, g_u = cmath.exp(1j * alpha), cmath.exp(1j * gamma)
    f, q, rhs = _kernel_power_map(n, a_u, g_u, beta, b, N)
    phi = fmn(n + 2, 3, N)
    F = hm.tilde_convolve(f, phi)
    sl = ps.hadamard(hm.shear_slice(f, -delta), phi).truncate(16)
    checks = [
        _slice_check("h - e^{-2i beta} g = z/(1-alpha z)^2 * (z/(1-gamma z)^2)^(n-2)", f, -beta, rhs),
        _membership_by_certificate(phi, n),
        _re_check("Re (1-alpha z)^2/z (h * (gamma log 1/(1-z/gamma))^(n-2)) > 1/2",
                  nu.condition_series(f.h, a_u, g_u, n), a_u, grid),
    ]
    if delta == beta:
        checks.append(_membership_by_certificate(sl, 1, "(h - e^{-2i delta} g)*phi"))
    else:
        checks.append(_starlike_probe_check("(h - e^{-2i delta} g)*phi convex", sl, 1, grid))
    checks.extend(_univalent_convex("f~*phi", F.truncate(16), [-delta], grid))
    return checks


def _rem_3_8(P, grid):
    alpha, beta, b = P["alpha"], P["beta"], P["b"]
    delta = beta if P["delta"] is None else P["delta"]
    _require(abs(b) <= 0.5, "|b| <= 1/2 keeps the Re-condition above 1/2")
    N = eval_order()
    a_u = cmath.exp(1j * alpha)
    f, q, rhs = _kernel_power_map(2, a_u, 1, beta, b, N)
    phi = fmn(4, 3, N)
    F = hm.tilde_convolve(f, phi).truncate(16)
    return [
        _slice_check("h - e^{-2i beta} g = z/(1-alpha z)^2", f, -beta, koebe(N, a_u)),
        _re_check("Re (1-alpha z)^2 h/z > 1/2", f.h, a_u, grid),
        _starlike_probe_check("h - e^{-2i delta} g starlike", hm.shear_slice(f, -delta), 0, grid),
        _membership_by_certificate(phi, 2),
        *_univalent_convex("f~*phi", F, sorted({-delta, -beta}), grid),
    ]


def _rem_3_9(P, grid):
    alpha, beta, b = P["alpha"], P["beta"], P["b"]
    _require(abs(b) <= 0.5, "|b| <= 1/2 keeps the Re-condition above 1/2")
    N = eval_order()
    a_u = cmath.exp(1j * alpha)
    q = ps.cauchy_product(PowerSeries.polynomial([0, 1, b * a_u], N), ps.binomial_series(a_u, 2, N))
    h = ps.salagean_apply(q, -1)
    rhs = half_plane(N, a_u)
    f = atlas.shear_built(rhs, beta, h)
    phi = fmn(3, 3, N)
    F = hm.tilde_convolve(f, phi).truncate(16)
    return [
        _slice_check("h - e^{-2i beta} g = z/(1-alpha z)", f, -beta, rhs),
        _re_check("Re (1-alpha z)^2/z Dh > 1/2", ps.salagean_apply(h, 1), a_u, grid),
        _starlike_probe_check("h - e^{-2i beta} g convex", hm.shear_slice(f, -beta), 1, grid),
        _membership_by_certificate(phi, 1),
        *_univalent_convex("f~*phi", F, [-beta], grid),
    ]


def _rem_3_10(P, grid):
    alpha, beta, b = P["alpha"], P["beta"], P["b"]
    _require(abs(b) <= 0.5, "|b| <= 1/2 keeps the Re-condition above 1/2")
    N = eval_order(4)
    a_u = cmath.exp(1j * alpha)
    f, q, rhs = _kernel_power_map(3, a_u, 1, beta, b, N)
    closed = ps.cauchy_product(PowerSeries.polynomial([0, 1, a_u], N), ps.binomial_series(a_u, 3, N))
    phi = fmn(5, 3, N)
    F = hm.tilde_convolve(f, phi).truncate(16)
    return [
        _slice_check("h - e^{-2i beta} g = (z + alpha z^2)/(1-alpha z)^3", f, -beta, closed),
        _re_check("Re (1-alpha z)^2/z (h * log 1/(1-z)) > 1/2", nu.condition_series(f.h, a_u, 1, 3), a_u, grid),
        _membership_by_certificate(phi, 3),
        *_univalent_convex("f~*phi", F, [-beta], grid),
    ]


def _cor_2_15(P, grid):
    which = P["map"]
    _require(which in ("K", "L"), "map must be K or L")
    N = eval_order()
    f = atlas.from_name(which, N)
    phi = fmn(4, 3, N)
    F = hm.tilde_convolve(f, phi).truncate(16)
    return [
        _slice_check("h - g = z/(1-z)^2", f, 0.0, koebe(N)),
        _re_check("Re (1-z)^2 h/z > 1/2", f.h, 1, grid),
        _membership_by_certificate(phi, 2),
        *_univalent_convex(f"{which}~*phi", F, [0.0], grid),
    ]


def _counterexample_grid(z0: complex) -> nu.DiskGrid:
    r = abs(z0)
    _require(r < nu.MAX_R - 1e-4, f"the zero at |z| = {r:.6g} lies beyond the probe radius cap {nu.MAX_R}")
    if r < R_PROBE - 1e-3:
        return nu.DiskGrid()
    return nu.DiskGrid(radii=nu.DEFAULT_RADII + (nu.MAX_R,))


def _ex_2_11(P, grid):
    a = P["a"]
    _require(a > -1 and a != 0, "need a > -1, a != 0 (at a = -1 the zero sits on the unit circle)")
    fa = atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), 16)
    phi = poly([0, 1, Fraction(1, 2)], 16)
    F = hm.tilde_convolve(fa, phi)
    closed = HarmonicMap(PowerSeries.polynomial([0, 1, (1 + a) / (2 * a)], 16), PowerSeries.polynomial([0, 0, 1 / (2 * a)], 16))
    z0 = complex(-a / (a + 2))
    return [
        _cert_check("phi = z + z^2/2 starlike", cert.starlike_coeff_certificate(phi)),
        _identity_check("f_a~*phi = z + (1+a)/(2a) z^2 + conj(z^2/(2a))", F.h, closed.h, CONCLUSION),
        _jacobian_formula(F, lambda z: 1 + (2 + a) / a * abs(z) ** 2 + 2 * (1 + a) / a * z.real),
        *_counterexample_checks("f_a~*phi", F, z0, _counterexample_grid(z0)),
    ]


def _jacobian_formula(F: HarmonicMap, formula: Callable[[np.ndarray], np.ndarray]) -> CheckOutcome:
    rng = np.random.default_rng(7)
    z = np.sqrt(rng.uniform(0, 0.98, 64)) * np.exp(2j * np.pi * rng.uniform(size=64))
    got = hm.jacobian(F, z)
    want = formula(z)
    err = float(np.max(np.abs(got - want)))
    return CheckOutcome("Jacobian matches its closed form", CONCLUSION, _bool(err <= 1e-10), True, {"max_abs_error": err})


def _ex_2_12(P, grid):
    b = P["b"]
    _require(0 < b < 0.5, "need 0 < b < 1/2")
    Fb = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), 16)
    phi = poly([0, 1, Fraction(1, 8)], 16)
    F = hm.tilde_convolve(Fb, phi)
    z0 = complex(-1 / (1 + b))
    return [
        _membership_by_certificate(phi, 2),
        _jacobian_formula(F, lambda z: 1 + (1 + b) * abs(z) ** 2 + (2 + b) * z.real),
        *_counterexample_checks("F_b~*phi", F, z0, _counterexample_grid(z0)),
    ]


def _ex_2_18(P, grid):
    alpha = P["alpha"]
    fal = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), 16)
    phi = poly([0, 1, Fraction(1, 2)], 16)
    F = hm.tilde_convolve(fal, phi)
    u = cmath.exp(1j * alpha)
    z0 = -cmath.exp(-1j * alpha) / 2
    closed_h = PowerSeries.polynomial([0, 1, 0.75 * u], 16)
    closed_g = PowerSeries.polynomial([0, 0, -0.25 * u**3], 16)
    return [
        _cert_check("phi = z + z^2/2 starlike", cert.starlike_coeff_certificate(phi)),
        _identity_check("analytic part z + (3/4)e^{i alpha} z^2", F.h, closed_h, CONCLUSION),
        _identity_check("co-analytic part -(1/4)e^{3i alpha} z^2 (the value the Jacobian formula requires)", F.g, closed_g, CONCLUSION),
        _jacobian_formula(F, lambda z: 1 + 2 * abs(z) ** 2 + 3 * (u * z).real),
        *_counterexample_checks("f_alpha~*phi", F, z0, _counterexample_grid(z0)),
    ]


def _cor_2_13(P, grid):
    a = P["a"]
    _require(a >= 6, "need a >= 6")
    N = eval_order()
    fa = atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), N)
    phi = fmn(3, 3, N)
    F = hm.tilde_convolve(fa, phi).truncate(16)
    return [
        _slice_check("h - g = z/(1-z)", fa, 0.0, half_plane(N)),
        _re_check("Re (1-z)^2/z Dh > 1/2", ps.salagean_apply(fa.h, 1), 1, grid),
        _membership_by_certificate(phi, 1),
        *_univalent_convex("f_a~*phi", F, [0.0], grid),
    ]


def _cor_2_14(P, grid):
    b = P["b"]
    _require(abs(b) <= 0.5, "need |b| <= 1/2")
    N = eval_order(4)
    Fb = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), N)
    phi = fmn(5, 3, N)
    F = hm.tilde_convolve(Fb, phi).truncate(16)
    sq = PowerSeries.from_function(lambda k: float(k * k), N)
    return [
        _slice_check("h - g = (z + z^2)/(1-z)^3", Fb, 0.0, sq),
        _re_check("Re (1-z)^2/z (h * log 1/(1-z)) > 1/2", nu.condition_series(Fb.h, 1, 1, 3), 1, grid),
        _membership_by_certificate(phi, 3),
        *_univalent_convex("F_b~*phi", F, [0.0], grid),
    ]


def _ex_2_17(P, grid):
    alpha = P["alpha"]
    N = eval_order()
    u = cmath.exp(1j * alpha)
    fal = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), N)
    L = atlas.named_harmonic(NamedHarmonic("halfplane_L"), N)
    # e^{i alpha} f_alpha(z) = L(e^{i alpha} z), coefficient-wise
    rot_h = PowerSeries(fal.h.to_numpy() * u)
    rot_g = PowerSeries(fal.g.to_numpy() * np.conj(u))
    k = np.arange(N + 1)
    L_h = PowerSeries(L.h.to_numpy() * u**k)
    L_g = PowerSeries(L.g.to_numpy() * u**k)
    img_min = min(float(np.min((u * hm.evaluate_on_circle(fal, r, grid.angular_samples)).real)) for r in grid.radii)
    return [
        _identity_check("e^{i alpha} h_alpha(z) = M(e^{i alpha} z)", rot_h, L_h),
        _identity_check("e^{-i alpha} g_alpha(z) = N(e^{i alpha} z)", rot_g, L_g),
        _slice_check("h + e^{-2i alpha} g = z/(1 - e^{i alpha} z)", fal, math.pi / 2 - alpha, half_plane(N, u), CONCLUSION),
        CheckOutcome("image lies in Re(e^{i alpha} w) > -1/2", CONCLUSION, _bool(img_min > -0.5), True, {"min": img_min}),
        _probe_check("f_alpha sense-preserving", CONCLUSION, nu.sense_preserving_probe(fal, grid)),
    ]


def _slanted_checks(alpha: float, N: int, grid) -> tuple[HarmonicMap, list[CheckOutcome]]:
    u = cmath.exp(1j * alpha)
    fal = atlas.named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=alpha), N)
    return fal, [
        _slice_check("h + e^{-2i alpha} g = z/(1 - e^{i alpha} z) (maps onto H_alpha)", fal, math.pi / 2 - alpha, half_plane(N, u)),
    ]


def _thm_2_16(P, grid):
    alpha = P["alpha"]
    N = eval_order()
    fal, checks = _slanted_checks(alpha, N, grid)
    phi = fmn(3, 3, N)
    F = hm.tilde_convolve(fal, phi).truncate(16)
    return checks + [
        _membership_by_certificate(phi, 1),
        *_univalent_convex("f~*phi", F, [math.pi / 2 - alpha], grid),
    ]


def _slanted_re_closed_form(fal: HarmonicMap, alpha: float, grid) -> list[CheckOutcome]:
    u = cmath.exp(1j * alpha)
    vals = nu.re_values_on_grid(fal.h, grid, prefactor=u)
    want = 1 - 0.5 * (u * grid.points()).real
    err = float(np.max(np.abs(vals - want)))
    return [
        _re_check("Re (1 - e^{i alpha} z)^2 h/z > 1/2", fal.h, u, grid),
        CheckOutcome("Re-condition equals 1 - Re(e^{i alpha} z)/2", HYPOTHESIS, _bool(err <= 1e-9), True, {"max_abs_error": err}),
    ]


def _thm_2_20(P, grid):
    alpha = P["alpha"]
    N = eval_order()
    fal, checks = _slanted_checks(alpha, N, grid)
    u = cmath.exp(1j * alpha)
    phi = fmn(4, 3, N)
    F = hm.tilde_convolve(fal, phi).truncate(16)
    return checks + [
        _slice_check("h - e^{-2i alpha} g = z/(1 - e^{i alpha} z)^2", fal, -alpha, koebe(N, u)),
        *_slanted_re_closed_form(fal, alpha, grid),
        _membership_by_certificate(phi, 2),
        *_univalent_convex("f_alpha~*phi", F, [-alpha, math.pi / 2 - alpha], grid),
    ]


# ---------------------------------------------------------------------------
# partial sums


def _lem_3_1(P, grid):
    n = P["n"]
    _require(n >= 1, "n must be >= 1")
    f12, f23, f3n = fmn(1, 2, exact=True), fmn(2, 3, exact=True), fmn(3, n)
    c3 = cert.starlike_coeff_certificate(f3n)
    bound_ok = c3.weighted_sum < math.pi**2 / 6 - 1
    return [
        _cert_check("f_{1,2} = z + z^2/2 (sum = 1)", cert.starlike_coeff_certificate(f12)),
        _cert_check("f_{2,3} = z + z^2/4 + z^3/9", cert.starlike_coeff_certificate(f23)),
        _cert_check(f"f_{{3,{n}}}", c3),
        CheckOutcome(f"sum for f_{{3,{n}}} below pi^2/6 - 1", HYPOTHESIS, _bool(bound_ok), True,
                     {"sum": float(c3.weighted_sum), "bound": math.pi**2 / 6 - 1}),
        _starlike_probe_check("f_{1,2} starlike", f12, 0, grid, CONCLUSION),
        _starlike_probe_check("f_{2,3} starlike", f23, 0, grid, CONCLUSION),
        _starlike_probe_check(f"f_{{3,{n}}} starlike", f3n, 0, grid, CONCLUSION),
    ]


def _lem_3_2(P, grid):
    m, n = P["m"], P["n"]
    _require(m >= 3 and n >= 1, "need m >= 3 and n >= 1")
    checks = []
    for j, top, base in ((2, m - 1, 1), (3, m - 2, 2), (n, m - 3, 3)):
        f = fmn(m, j, exact=True)
        checks.append(_exact_check(f"D^{top} f_{{{m},{j}}} = f_{{{base},{j}}}", ps.salagean_apply(f, top).coeffs,
                                   fmn(base, j, exact=True).coeffs))
        checks.append(_starlike_probe_check(f"f_{{{m},{j}}} in S_{top}", f, top, grid, CONCLUSION))
    return checks


def _lem_3_3(P, grid):
    m = P["m"]
    _require(m >= 4, "need m >= 4 for all three items")
    j = m - 1
    N = 16
    phi = polylog(j, N)
    checks = [_polylog_membership(j, m)]
    checks.append(_starlike_probe_check(f"phi_2 in S_{m - 2}", ps.partial_sum(phi, 2), m - 2, grid, CONCLUSION))
    checks.append(_starlike_probe_check(f"phi_3 in S_{m - 3}", ps.partial_sum(phi, 3), m - 3, grid, CONCLUSION))
    for p in P_RANGE:
        checks.append(_starlike_probe_check(f"phi_{p} in S_{m - 4}", ps.partial_sum(phi, p), m - 4, grid, CONCLUSION))
    return checks


def _allowed_p(gap: int) -> tuple[int, ...]:
    """Partial-sum indices covered by the items with ``m - n = gap``."""
    if gap >= 4:
        return P_RANGE
    if gap == 3:
        return (2, 3)
    if gap == 2:
        return (2,)
    return ()


def _map_level(name: str) -> int:
    head = name.partition(":")[0]
    levels = {"f_a": 1, "K": 2, "L": 2, "F_b": 3}
    _require(head in levels, f"map must be one of f_a:<a>, K, L, F_b:<b>; got {name!r}")
    return levels[head]


def _partial_sum_family(label: str, f: HarmonicMap, n: int, j: int, p, grid, directions=(0.0,),
                        condition: list[CheckOutcome] | None = None, gap_offset: int = 0) -> list[CheckOutcome]:
    """Checks for ``(f ~* phi)_p`` with ``phi = polylog(j)`` in ``S_{j+1}``."""
    level = j + 1
    ps_allowed = _allowed_p(level - n - gap_offset)
    _require(bool(ps_allowed), f"phi in S_{level} is too weak for this map (need S_{n + gap_offset + 2} or better)")
    if p is not None:
        _require(p in ps_allowed or (p > 8 and ps_allowed == P_RANGE), f"p = {p} is not covered for phi in S_{level}")
        ps_allowed = (p,)
    phi = polylog(j, max(ps_allowed) + 8)
    checks = list(condition or [])
    checks.append(_polylog_membership(j, level))
    F = hm.tilde_convolve(f, phi)
    for q in ps_allowed:
        Fp = hm.harmonic_partial_sum(F, q)
        checks.extend(_univalent_convex(f"({label}~*phi)_{q}", Fp, directions, grid))
    return checks


def _kernel_conditions(f: HarmonicMap, n: int, grid) -> list[CheckOutcome]:
    """Hypotheses ``h - g = (z/(1-z)^2)^(n-1)`` and the Re-condition with the log power ``n - 2``."""
    N = f.order
    rhs = ps.hadamard_power(koebe(N), n - 1)
    return [
        _slice_check(f"h - g = (z/(1-z)^2)^{n - 1}", f, 0.0, rhs),
        _re_check(f"Re (1-z)^2/z (h * (log 1/(1-z))^{n - 2}) > 1/2", nu.condition_series(f.h, 1, 1, n), 1, grid),
    ]


def _thm_3_4(P, grid):
    name = P["map"]
    n = _map_level(name) if P["n"] is None else P["n"]
    m = n + 4 if P["m"] is None else P["m"]
    _require(m - n >= 2, "need m >= n + 2")
    N = eval_order(n + 1)
    f = atlas.from_name(name, N)
    return _partial_sum_family(name, f, n, m - 1, P["p"], grid, condition=_kernel_conditions(f, n, grid))


def _cor_3_5(P, grid):
    a = P["a"]
    _require(a >= 6, "need a >= 6")
    N = eval_order(2)
    f = atlas.named_harmonic(NamedHarmonic("family_f_a", a=a), N)
    return _partial_sum_family("f_a", f, 1, P["j"], P["p"], grid, condition=_kernel_conditions(f, 1, grid))


def _cor_3_9(P, grid, which: str):
    N = eval_order()
    f = atlas.from_name(which, N)
    return _partial_sum_family(which, f, 2, P["j"], P["p"], grid, condition=_kernel_conditions(f, 2, grid))


def _ex_3_10(P, grid):
    N = 12
    K = atlas.from_name("K", N, exact=True)
    want = {
        (3, 2): ([Fraction(5, 16)], [Fraction(1, 16)]),
        (4, 3): ([Fraction(5, 32), Fraction(14, 243)], [Fraction(1, 32), Fraction(5, 243)]),
        (5, 4): ([Fraction(5, 64), Fraction(14, 729), Fraction(15, 2048)],
                 [Fraction(1, 64), Fraction(5, 729), Fraction(7, 2048)]),
    }
    checks = []
    for (j, p), (hw, gw) in want.items():
        Fp = hm.harmonic_partial_sum(hm.tilde_convolve(K, atlas.kernel(KernelKind("polylog", m=j), N, exact=True)), p)
        got = [c.re for c in Fp.h.coeffs[2 : p + 1]] + [c.re for c in Fp.g.coeffs[2 : p + 1]]
        imag_zero = all(c.im == 0 for c in Fp.h.coeffs + Fp.g.coeffs)
        checks.append(_exact_check(f"(K~*f_{j})_{p} coefficients", got if imag_zero else [], hw + gw, CONCLUSION))
        checks.append(_polylog_membership(j, j + 1))
        checks.extend(_univalent_convex(f"(K~*f_{j})_{p}", Fp.to_float(), [0.0], grid))
    return checks


def _cor_3_11(P, grid):
    b = P["b"]
    _require(abs(b) <= 0.5, "need |b| <= 1/2")
    N = eval_order(4)
    f = atlas.named_harmonic(NamedHarmonic("family_F_b", b=b), N)
    return _partial_sum_family("F_b", f, 3, P["j"], P["p"], grid, condition=_kernel_conditions(f, 3, grid))


def _thm_3_12(P, grid):
    alpha = P["alpha"]
    N = eval_order()
    fal, checks = _slanted_checks(alpha, N, grid)
    # phi_p must be convex: phi in S_3 -> p = 2, S_4 -> p <= 3, S_5 -> all p
    return _partial_sum_family("f~", fal, 1, P["j"], P["p"], grid, directions=(math.pi / 2 - alpha,), condition=checks)


def _thm_3_13(P, grid):
    alpha = P["alpha"]
    N = eval_order()
    fal, checks = _slanted_checks(alpha, N, grid)
    u = cmath.exp(1j * alpha)
    checks.append(_slice_check("h - e^{-2i alpha} g = z/(1 - e^{i alpha} z)^2", fal, -alpha, koebe(N, u)))
    checks.extend(_slanted_re_closed_form(fal, alpha, grid))
    return _partial_sum_family("f_alpha", fal, 2, P["j"], P["p"], grid,
                               directions=(-alpha, math.pi / 2 - alpha), condition=checks)


# ---------------------------------------------------------------------------
# registry


def _P(name, kind, default, doc=""):
    return Param(name, kind, default, doc)


_UC = ("sense-preserving (J > 0)", "injective on |z| in {0.5, 0.9, 0.995}", "direction probe(s)")
_CX = ("Jacobian closed form", "sense-preserving (expected to fail)", "Jacobian zero at the closed-form point")

_REGISTRY: dict[str, tuple[ScenarioDescriptor, Callable]] = {}


def _register(desc: ScenarioDescriptor, runner: Callable) -> None:
    if desc.id in _REGISTRY:
        raise RuntimeError(f"duplicate scenario id {desc.id}")
    _REGISTRY[desc.id] = (desc, runner)


_register(ScenarioDescriptor(
    "lem-2.1", "f in S_n, g in S_m => f*g in S_{n+m-1}",
    (_P("n", "int", 2, "level of f = f_{n+2,3}"), _P("m", "int", 1, "level of g = f_{m+2,3}")),
    ("f in S_n (certificate)", "g in S_m (certificate)"), ("n-starlike probe of f*g at level n+m-1",)), _lem_2_1)
_register(ScenarioDescriptor(
    "thm-2.5", "h - e^{-2i gamma} g = z, h*phi in S_2, (h - e^{-2i beta} g)*phi convex => f~*phi convex in direction -beta",
    (_P("gamma", "angle", 0.3), _P("beta", "angle", 0.4)),
    ("shear identity", "h*phi in S_2", "(h - e^{-2i beta} g)*phi convex"), _UC,
    notes="instance: h = z/(1-z)^2, g = e^{2i gamma}(h - z), phi = z + z^2/16"), _thm_2_5)
_register(ScenarioDescriptor(
    "cor-2.6", "phi in S_2 with sum n^2|a_n| <= 1/sqrt(2(1-cos 2 theta)) => convex in every direction -beta, |beta+gamma| <= theta",
    (_P("theta", "angle", "pi/4"), _P("gamma", "angle", 0.3), _P("c", "real", "1/10", "phi = z + c z^2")),
    ("phi in S_2", "n_squared certificate"), _UC), _cor_2_6)
_register(ScenarioDescriptor(
    "rem-2.1", "phi in S_2 with sum n^2|a_n| <= 1/2 => phi + conj(e^{2i gamma}(phi - z)) harmonic convex",
    (_P("gamma", "angle", 0.3), _P("c", "real", "1/8", "phi = z + c z^2")),
    ("phi in S_2", "n_squared certificate at theta = pi/2"), _UC), _rem_2_1)
_register(ScenarioDescriptor(
    "rem-2.2", "sum n^3|a_n| <= 1 => phi + conj(e^{2i gamma}(phi - z)) harmonic convex",
    (_P("gamma", "angle", 0.3), _P("c2", "real", "1/16"), _P("c3", "real", "1/108")),
    ("n_cubed certificate", "implied n_squared bound", "implied S_2 membership"), _UC), _rem_2_2)
_register(ScenarioDescriptor(
    "thm-2.9", "h starlike, h - e^{-2i gamma} g = h * log 1/(1-z), phi in S_2 => convex in direction -gamma (and -beta)",
    (_P("gamma", "angle", "pi/6"), _P("beta", "angle", 0.0)),
    ("shear identity", "h starlike", "phi in S_2", "h - e^{-2i beta} g starlike (coefficient certificate only)"), _UC,
    notes="the 'for any beta' clause is checked via the starlike coefficient certificate of the slice only"), _thm_2_9)
_register(ScenarioDescriptor(
    "cor-2.10-1", "h starlike, h - g = h * log 1/(1-z), phi in S_2 => convex in the real direction", (),
    ("h = z/(1-z)^2 starlike (probe)", "phi in S_2"), _UC), _cor_2_10_1)
_register(ScenarioDescriptor(
    "cor-2.10-2", "h starlike with the directional inequality at theta => convex in every direction -beta, |beta| <= theta",
    (_P("theta", "angle", "pi/6"), _P("c", "real", "1/2", "h = z + c z^2")),
    ("directional certificate", "h starlike", "phi in S_2", "slices h - e^{-2i beta} g starlike"), _UC),
    lambda P, g: _cor_2_10_23(P, g, 2))
_register(ScenarioDescriptor(
    "cor-2.10-3", "cos 2 theta <= 1/4 and the directional inequality => convex in every direction -beta, |beta| <= theta",
    (_P("theta", "angle", "pi/3"), _P("c", "real", "7/20", "h = z + c z^2")),
    ("directional certificate", "implied starlike certificate", "phi in S_2", "slices starlike"), _UC),
    lambda P, g: _cor_2_10_23(P, g, 3))
_register(ScenarioDescriptor(
    "rem-2.3", "sum (2n-1)|a_n| <= 1, phi in S_2, g = h - h * log 1/(1-z) => f~*phi harmonic convex", (),
    ("odd certificate", "phi in S_2"), _UC), _rem_2_3)
_register(ScenarioDescriptor(
    "ex-2.10a", "z/(1-z) + conj(z/(1-z) - log 1/(1-z)) univalent and convex in the real direction", (),
    ("g = h - h*log", "h starlike", "log 1/(1-z) in S_2"), ("closed form",) + _UC), _ex_2_10a)
_register(ScenarioDescriptor(
    "ex-2.10b", "z + z^2/6 + conj(z^2/12) harmonic convex", (),
    ("g = h - h*log", "odd certificate"), ("exact closed form",) + _UC), _ex_2_10b)
_register(ScenarioDescriptor(
    "thm-2.19", "kernel-power theorem: Re-condition > 1/2 and phi in S_n => convex in direction -delta",
    (_P("n", "int", 3), _P("alpha", "angle", "pi/5"), _P("gamma", "angle", "pi/7"), _P("beta", "angle", 0.3),
     _P("delta", "angle", None, "defaults to beta"), _P("b", "real", "1/4", "condition series (z + b alpha z^2)/(1-alpha z)^2")),
    ("shear identity", "phi in S_n", "Re-condition > 1/2", "(h - e^{-2i delta} g)*phi convex"), _UC), _thm_2_19)
_register(ScenarioDescriptor(
    "rem-3.8", "n = 2: Re (1-alpha z)^2 h/z > 1/2, phi in S_2 => convex in directions -delta and -beta",
    (_P("alpha", "angle", "pi/4"), _P("beta", "angle", 0.5), _P("delta", "angle", None), _P("b", "real", "1/2")),
    ("shear identity", "Re-condition", "h - e^{-2i delta} g starlike (probe)", "phi in S_2"), _UC), _rem_3_8)
_register(ScenarioDescriptor(
    "rem-3.9", "n = gamma = 1: Re (1-alpha z)^2 Dh/z > 1/2, phi convex => convex in direction -beta",
    (_P("alpha", "angle", "pi/3"), _P("beta", "angle", -0.4), _P("b", "real", "1/3")),
    ("shear identity", "Re-condition on Dh", "h - e^{-2i beta} g convex (probe)", "phi convex"), _UC), _rem_3_9)
_register(ScenarioDescriptor(
    "rem-3.10", "n = 3, gamma = 1: Re (1-alpha z)^2 (h*log)/z > 1/2, phi in S_3 => convex in direction -beta",
    (_P("alpha", "angle", "2pi/3"), _P("beta", "angle", 0.2), _P("b", "real", "-1/4")),
    ("shear identity (with e^{-2i beta})", "Re-condition", "phi in S_3"), _UC,
    notes="hypothesis implemented with e^{-2i beta}, matching every parallel statement"), _rem_3_10)
_register(ScenarioDescriptor(
    "cor-2.15", "h - g = z/(1-z)^2, Re (1-z)^2 h/z > 1/2, phi in S_2 => convex in the real direction",
    (_P("map", "text", "K", "K or L"),), ("shear identity", "Re-condition", "phi in S_2"), _UC), _cor_2_15)
_register(ScenarioDescriptor(
    "ex-2.11", "f_a ~* (z + z^2/2) has a Jacobian zero at -a/(a+2)", (_P("a", "real", 6),),
    ("phi starlike",), _CX, COUNTEREXAMPLE), _ex_2_11)
_register(ScenarioDescriptor(
    "ex-2.12", "F_b ~* (z + z^2/8) has a Jacobian zero at -1/(1+b)", (_P("b", "real", "1/4"),),
    ("phi in S_2",), _CX, COUNTEREXAMPLE), _ex_2_12)
_register(ScenarioDescriptor(
    "cor-2.13", "a >= 6, phi convex => f_a~*phi univalent and convex in the real direction", (_P("a", "real", 6),),
    ("h - g = z/(1-z)", "Re-condition on Dh", "phi convex"), _UC), _cor_2_13)
_register(ScenarioDescriptor(
    "cor-2.14", "phi in S_3 => F_b~*phi univalent and convex in the real direction", (_P("b", "real", "1/4"),),
    ("h - g = sum k^2 z^k", "Re-condition on h*log", "phi in S_3"), _UC), _cor_2_14)
_register(ScenarioDescriptor(
    "ex-2.17", "f_alpha is the rotation of L and maps into the half-plane H_alpha", (_P("alpha", "angle", "pi/3"),),
    ("rotation identities",), ("half-plane identity", "image in H_alpha", "sense-preserving")), _ex_2_17)
_register(ScenarioDescriptor(
    "thm-2.16", "f in S^0(H_alpha), phi convex => convex in direction pi/2 - alpha", (_P("alpha", "angle", "pi/3"),),
    ("half-plane identity", "phi convex"), _UC), _thm_2_16)
_register(ScenarioDescriptor(
    "ex-2.18", "f_alpha ~* (z + z^2/2) has a Jacobian zero at -e^{-i alpha}/2", (_P("alpha", "angle", "pi/4"),),
    ("phi starlike",), ("closed form",) + _CX, COUNTEREXAMPLE), _ex_2_18)
_register(ScenarioDescriptor(
    "thm-2.20", "phi in S_2 => f_alpha~*phi convex in directions -alpha and pi/2 - alpha", (_P("alpha", "angle", "pi/3"),),
    ("half-plane identity", "shear identity", "Re-condition closed form", "phi in S_2"), _UC), _thm_2_20)
_register(ScenarioDescriptor(
    "lem-3.1", "f_{1,2}, f_{2,3} and every f_{3,n} are starlike", (_P("n", "int", 10000),),
    ("starlike certificates", "f_{3,n} sum below pi^2/6 - 1"), ("starlike probes",)), _lem_3_1)
_register(ScenarioDescriptor(
    "lem-3.2", "f_{m,2} in S_{m-1}, f_{m,3} in S_{m-2}, f_{m,n} in S_{m-3}", (_P("m", "int", 5), _P("n", "int", 10)),
    ("Salagean reductions",), ("n-starlike probes",)), _lem_3_2)
_register(ScenarioDescriptor(
    "lem-3.3", "phi in S_m => phi_2 in S_{m-2}, phi_3 in S_{m-3}, phi_p in S_{m-4}", (_P("m", "int", 6),),
    ("phi = polylog(m-1) in S_m",), ("n-starlike probes of partial sums",)), _lem_3_3)
_register(ScenarioDescriptor(
    "thm-3.4", "partial sums (f~*phi)_p convex in the real direction; items decided by m - n",
    (_P("map", "text", "f_a:6", "f_a:<a>, K, L or F_b:<b>"), _P("n", "int", None, "defaults to the map's kernel level"),
     _P("m", "int", None, "phi = polylog(m-1) in S_m; defaults to n + 4"), _P("p", "int", None, "single partial sum; default 2..8")),
    ("h - g kernel power", "Re-condition", "phi in S_m"), _UC), _thm_3_4)
_register(ScenarioDescriptor(
    "cor-3.5", "f_a partial sums, a >= 6",
    (_P("a", "real", 6), _P("j", "int", 4, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("h - g = z/(1-z)", "Re-condition on Dh", "phi membership"), _UC), _cor_3_5)
_register(ScenarioDescriptor(
    "cor-3.9-K", "(K~*phi)_p convex in the real direction",
    (_P("j", "int", 5, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("H - G = z/(1-z)^2", "Re (1-z)^2 H/z > 1/2", "phi membership"), _UC), lambda P, g: _cor_3_9(P, g, "K"))
_register(ScenarioDescriptor(
    "cor-3.9-L", "(L~*phi)_p convex in the real direction",
    (_P("j", "int", 5, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("M - N = z/(1-z)^2", "Re (1-z)^2 M/z > 1/2", "phi membership"), _UC), lambda P, g: _cor_3_9(P, g, "L"))
_register(ScenarioDescriptor(
    "ex-3.10", "exact coefficients of (K~*f_3)_2, (K~*f_4)_3, (K~*f_5)_4", (),
    ("polylog membership",), ("exact coefficients",) + _UC), _ex_3_10)
_register(ScenarioDescriptor(
    "cor-3.11", "F_b partial sums, |b| <= 1/2",
    (_P("b", "real", "1/2"), _P("j", "int", 6, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("h - g = (z/(1-z)^2)^2", "Re-condition on h*log", "phi membership"), _UC), _cor_3_11)
_register(ScenarioDescriptor(
    "thm-3.12", "f in S^0(H_alpha): partial sums convex in direction pi/2 - alpha",
    (_P("alpha", "angle", "pi/3"), _P("j", "int", 4, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("half-plane identity", "phi membership"), _UC), _thm_3_12)
_register(ScenarioDescriptor(
    "thm-3.13", "f_alpha partial sums convex in directions -alpha and pi/2 - alpha",
    (_P("alpha", "angle", "pi/3"), _P("j", "int", 5, "phi = polylog(j) in S_{j+1}"), _P("p", "int", None)),
    ("half-plane identity", "shear identity", "Re-condition", "phi membership"), _UC), _thm_3_13)


def list_scenarios() -> tuple[ScenarioDescriptor, ...]:
    return tuple(desc for desc, _ in _REGISTRY.values())


def get_descriptor(sid: str) -> ScenarioDescriptor:
    if sid not in _REGISTRY:
        raise KeyError(f"unknown scenario {sid!r}; known: {', '.join(_REGISTRY)}")
    return _REGISTRY[sid][0]


def run_scenario(sid: str, params: dict | None = None, grid: nu.DiskGrid | None = None, **kwargs) -> ScenarioReport:
    """Run one scenario; ``params`` (or keyword arguments) override the defaults.

    Raises ``KeyError`` for unknown ids and ``ValueError`` for unknown or
    out-of-range parameters.
    """
    desc, runner = get_descriptor(sid), _REGISTRY[sid][1]
    given = dict(params or {}) | kwargs
    known = {p.name: p for p in desc.params}
    unknown = sorted(set(given) - set(known))
    if unknown:
        raise ValueError(f"scenario {sid} has no parameter(s) {unknown}; known: {sorted(known)}")
    P = desc.defaults()
    for k, v in given.items():
        P[k] = known[k].convert(v)
    grid = grid or nu.DiskGrid()
    t0 = time.perf_counter()
    checks = tuple(runner(P, grid))
    return ScenarioReport(sid, P, checks, _overall(checks), time.perf_counter() - t0)


def run_all(grid: nu.DiskGrid | None = None) -> list[ScenarioReport]:
    return [run_scenario(d.id, grid=grid) for d in list_scenarios()]
