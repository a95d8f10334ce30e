"""Grid probes for the analytic hypotheses and conclusions.

All probes sample the open disk on a polar :class:`DiskGrid` and never touch
``|z| = 1``.  Circles are evaluated with one FFT each
(:func:`shearlab.series.evaluate_on_circle`); results are laid out as
``(angle, radius)`` arrays so that ``argmin`` breaks ties by the smallest
angle first and then the smallest radius.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree
from shapely.geometry import LinearRing

from . import harmonic as hm
from . import series as ps
from .atlas import KernelKind, kernel
from .harmonic import HarmonicMap
from .series import PowerSeries

STRICT_TOL = 1e-9
DEFAULT_RADII = (0.1, 0.3, 0.5, 0.7, 0.9, 0.97, 0.995)
DEFAULT_SAMPLES = 2048
MAX_R = 0.999
GRID_ENV = "SHEARLAB_GRID"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DiskGrid:
    radii: tuple[float, ...] = DEFAULT_RADII
    angular_samples: int = DEFAULT_SAMPLES
    r_max: float | None = None

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise ValueError("grid needs at least one radius")
        r_max = max(radii) if self.r_max is None else float(self.r_max)
        object.__setattr__(self, "r_max", r_max)
        if r_max > MAX_R:
            raise ValueError(f"r_max must be <= {MAX_R}, got {r_max}")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("grid radii must be strictly increasing")
        if radii[0] <= 0 or radii[-1] > r_max:
            raise ValueError("grid radii must lie in (0, r_max]")
        if self.angular_samples < 64:
            raise ValueError("grid needs at least 64 angular samples")

    @classmethod
    def parse(cls, text: str) -> "DiskGrid":
        """``"0.1,0.5,0.9:1024"`` -> radii and angular sample count."""
        radii, _, samples = text.partition(":")
        return cls(
            radii=tuple(float(r) for r in radii.split(",") if r.strip()),
            angular_samples=int(samples) if samples else DEFAULT_SAMPLES,
        )

    @classmethod
    def from_env(cls) -> "DiskGrid":
        text = os.environ.get(GRID_ENV)
        return cls.parse(text) if text else cls()

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angular_samples) / self.angular_samples

    def points(self) -> np.ndarray:
        """Complex sample points, shape ``(angular_samples, len(radii))``."""
        return np.exp(1j * self.angles())[:, None] * np.asarray(self.radii)[None, :]

    @property
    def size(self) -> int:
        return self.angular_samples * len(self.radii)


def series_on_grid(f: PowerSeries, grid: DiskGrid) -> np.ndarray:
    return np.stack([ps.evaluate_on_circle(f, r, grid.angular_samples) for r in grid.radii], axis=1)


def _argmin(values: np.ndarray, grid: DiskGrid) -> tuple[float, complex]:
    j, i = np.unravel_index(int(np.argmin(values)), values.shape)
    return float(values[j, i]), complex(grid.points()[j, i])


@dataclass(frozen=True)
class ProbeReport:
    min_value: float
    argmin: complex
    threshold: float
    verdict: str
    samples_evaluated: int
    note: str = ""
    invalid_points: tuple[complex, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        doc = {
            "min_value": self.min_value,
            "argmin": [self.argmin.real, self.argmin.imag],
            "threshold": self.threshold,
            "verdict": self.verdict,
            "samples_evaluated": self.samples_evaluated,
        }
        if self.note:
            doc["note"] = self.note
        if self.invalid_points:
            doc["invalid_points"] = [[z.real, z.imag] for z in self.invalid_points]
        return doc


def _report(min_value: float, argmin: complex, threshold: float, n: int, note: str = "", invalid=()) -> ProbeReport:
    ok = min_value > threshold - STRICT_TOL and not invalid
    return ProbeReport(min_value, argmin, threshold, PASS if ok else FAIL, n, note, tuple(invalid))


# ---------------------------------------------------------------------------
# Re > 1/2 conditions


def prefactored_series(q: PowerSeries, alpha_unit: complex, exponent: int = 2) -> PowerSeries:
    """Coefficients of ``(1 - alpha z)^exponent q(z) / z``."""
    if q[0] != 0:
        raise ValueError("q(z)/z needs q(0) = 0")
    factor = ps.PowerSeries.polynomial([1], q.order, exact=False)
    lin = ps.PowerSeries.polynomial([1, -complex(alpha_unit)], q.order)
    for _ in range(exponent):
        factor = ps.cauchy_product(factor, lin)
    return ps.cauchy_product(factor, q.to_float()).divide_by_z()


def re_values_on_grid(q: PowerSeries, grid: DiskGrid, prefactor: complex | None = None, exponent: int = 2) -> np.ndarray:
    """``Re[(1 - alpha z)^e q(z)/z]`` (or ``Re q`` without prefactor) on the grid."""
    s = q if prefactor is None else prefactored_series(q, prefactor, exponent)
    return series_on_grid(s, grid).real


def re_min_on_grid(q: PowerSeries, prefactor: complex | None = None, grid: DiskGrid | None = None,
                   exponent: int = 2, threshold: float = 0.5) -> ProbeReport:
    """Minimum of the real part against the fixed threshold 1/2."""
    grid = grid or DiskGrid()
    values = re_values_on_grid(q, grid, prefactor, exponent)
    m, z = _argmin(values, grid)
    return _report(m, z, threshold, grid.size)


def condition_series(h: PowerSeries, alpha_unit: complex = 1, gamma_unit: complex = 1, n: int = 2) -> PowerSeries:
    """Inner series ``h * (gamma log 1/(1 - z/gamma))_*^(n-2)``.

    ``n = 2`` returns ``h``; ``n = 1`` gives ``h * z/(1 - gamma z)^2`` (``D h``
    when ``gamma = 1``); ``n = 3`` with ``gamma = 1`` gives ``h * log 1/(1-z)``.
    ``alpha_unit`` is the prefactor twist to pass on to :func:`re_min_on_grid`;
    it is only validated here.
    """
    if n < 1:
        raise ValueError(f"condition_series needs n >= 1, got {n}")
    if abs(abs(complex(alpha_unit)) - 1) > 1e-12 or abs(abs(complex(gamma_unit)) - 1) > 1e-12:
        raise ValueError("alpha and gamma must be unimodular")
    if not h.is_normalized():
        raise ValueError("condition_series needs a normalized h")
    if n == 2:
        return h
    log_k = kernel(KernelKind("log_kernel", alpha=gamma_unit), h.order, exact=h.exact and gamma_unit == 1)
    return ps.hadamard(h, ps.hadamard_power(log_k, n - 2))


# ---------------------------------------------------------------------------
# n-starlikeness


def n_starlike_values(f: PowerSeries, n: int, grid: DiskGrid, floor: float = 1e-12):
    lower = series_on_grid(ps.salagean_apply(f, n), grid)
    upper = series_on_grid(ps.salagean_apply(f, n + 1), grid)
    bad = np.abs(lower) < floor
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bad, np.inf, upper / np.where(bad, 1, lower)).real
    return ratio, bad


def n_starlike_probe(f: PowerSeries, n: int, alpha: float, grid: DiskGrid | None = None, floor: float = 1e-12) -> ProbeReport:
    """Minimum of ``Re(D^{n+1} f / D^n f)`` over the grid against ``alpha``.

    Grid points where ``|D^n f|`` drops below ``floor`` invalidate the probe.
    """
    grid = grid or DiskGrid()
    if not f.is_normalized():
        raise ValueError("n_starlike_probe needs a normalized series")
    ratio, bad = n_starlike_values(f, n, grid, floor)
    invalid = tuple(complex(z) for z in grid.points()[bad])
    finite = np.where(bad, np.inf, ratio)
    m, z = _argmin(finite, grid)
    note = f"D^{n} f vanishes at {len(invalid)} grid point(s)" if invalid else ""
    return _report(m, z, float(alpha), grid.size, note, invalid)


# ---------------------------------------------------------------------------
# Jacobian


@dataclass(frozen=True)
class JacobianScanReport:
    min_abs_J: float
    location: complex
    sign_changes: bool
    refined_zeros: tuple[complex, ...]
    min_J: float = math.nan
    innermost_zero: complex | None = None

    def nearest_zero(self, target: complex) -> tuple[complex | None, float]:
        if not self.refined_zeros:
            return None, math.inf
        zs = np.asarray(self.refined_zeros)
        i = int(np.argmin(np.abs(zs - target)))
        return complex(zs[i]), float(abs(zs[i] - target))

    def to_dict(self) -> dict:
        return {
            "min_abs_J": self.min_abs_J,
            "min_J": self.min_J,
            "location": [self.location.real, self.location.imag],
            "sign_changes": self.sign_changes,
            "refined_zeros": [[z.real, z.imag] for z in self.refined_zeros],
            "innermost_zero": None if self.innermost_zero is None else [self.innermost_zero.real, self.innermost_zero.imag],
        }


def jacobian_on_grid(f: HarmonicMap, grid: DiskGrid) -> np.ndarray:
    return np.stack([hm.jacobian_on_circle(f, r, grid.angular_samples) for r in grid.radii], axis=1)


def _bisect_segments(f: HarmonicMap, lo: np.ndarray, hi: np.ndarray, tol: float, max_iter: int = 200) -> np.ndarray:
    """Vectorised bisection of ``J`` along straight segments ``lo -> hi`` with a sign change."""
    hp, gp = ps.derivative(f.h), ps.derivative(f.g)

    def J(z):
        return np.abs(ps.evaluate(hp, z)) ** 2 - np.abs(ps.evaluate(gp, z)) ** 2

    lo, hi = lo.copy(), hi.copy()
    s_lo = np.sign(J(lo))
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        jm = J(mid)
        done = (np.abs(jm) < tol) & (np.abs(hi - lo) < 1e-12)
        if np.all(done):
            break
        same = np.sign(jm) == s_lo
        lo = np.where(same & ~done, mid, lo)
        hi = np.where(~same & ~done, mid, hi)
    return mid


def jacobian_scan(f: HarmonicMap, grid: DiskGrid | None = None, tol: float = 1e-9) -> JacobianScanReport:
    """Scan ``J = |h'|^2 - |g'|^2`` and refine every sign change by bisection.

    Sign changes are looked for along each ray (including the segment from the
    origin to the first radius) and along each circle between neighbouring
    angles; each bracket is bisected along its straight chord.
    """
    grid = grid or DiskGrid()
    J = jacobian_on_grid(f, grid)
    pts = grid.points()
    absJ = np.abs(J)
    m, loc = _argmin(absJ, grid)
    j0 = hm.jacobian(f, 0j)

    lo_list, hi_list = [], []
    # origin -> first radius
    first = np.sign(J[:, 0]) != np.sign(j0)
    if j0 != 0 and np.any(first):
        lo_list.append(np.zeros(int(first.sum()), dtype=complex))
        hi_list.append(pts[first, 0])
    # along rays
    ray = np.sign(J[:, :-1]) * np.sign(J[:, 1:]) < 0
    lo_list.append(pts[:, :-1][ray])
    hi_list.append(pts[:, 1:][ray])
    # along circles
    nxt = np.roll(J, -1, axis=0)
    circ = np.sign(J) * np.sign(nxt) < 0
    lo_list.append(pts[circ])
    hi_list.append(np.roll(pts, -1, axis=0)[circ])
    lo = np.concatenate(lo_list)
    hi = np.concatenate(hi_list)

    # grid points that already sit on the zero set have no strict sign change
    zeros: list[complex] = [complex(z) for z in pts[absJ < tol]]
    if lo.size:
        z = _bisect_segments(f, lo, hi, tol)
        Jz = np.abs(hm.jacobian(f, z))
        for zz in z[(Jz < tol) & (np.abs(z) < grid.r_max)]:
            zz = complex(zz)
            if not any(abs(zz - w) < 1e-9 for w in zeros):
                zeros.append(zz)
    inner = None
    if zeros:
        inner = _innermost_zero(f, zeros, grid, tol)
        if inner is not None and not any(abs(inner - w) < 1e-12 for w in zeros):
            zeros.append(inner)
    return JacobianScanReport(
        min_abs_J=m,
        location=loc,
        sign_changes=bool(lo.size) or bool(zeros),
        refined_zeros=tuple(zeros),
        min_J=float(np.min(J)),
        innermost_zero=inner,
    )


def _first_radial_zero(f: HarmonicMap, t: float, r_max: float, tol: float, steps: int = 512) -> float:
    """Radius of the first sign change of ``J`` along the ray at angle ``t`` (``r_max`` if none)."""
    ray = np.exp(1j * t) * np.linspace(0.0, r_max, steps + 1)
    Jr = hm.jacobian(f, ray)
    hit = np.flatnonzero(np.sign(Jr[1:]) != np.sign(Jr[0]))
    if not hit.size:
        return r_max
    k = int(hit[0]) + 1
    z = _bisect_segments(f, ray[k - 1 : k], ray[k : k + 1], tol)[0]
    return abs(z)


def _innermost_zero(f: HarmonicMap, zeros: list[complex], grid: DiskGrid, tol: float) -> complex | None:
    """Zero of ``J`` of smallest modulus, refined in angle off the sampled rays.

    The radial distance to the first zero is minimised over the angle with a
    bounded scalar search around the best sampled zero; each distance comes
    from bisection along the ray.
    """
    start = min(zeros, key=abs)
    t0 = math.atan2(start.imag, start.real)
    dt = 4 * math.pi / grid.angular_samples
    res = minimize_scalar(
        lambda t: _first_radial_zero(f, t, grid.r_max, tol),
        bounds=(t0 - dt, t0 + dt),
        method="bounded",
        options={"xatol": 1e-12},
    )
    t = float(res.x)
    r = _first_radial_zero(f, t, grid.r_max, tol)
    z = r * complex(math.cos(t), math.sin(t))
    if r >= grid.r_max or abs(hm.jacobian(f, z)) >= tol:
        return None
    return z if abs(z) <= abs(start) else start


def sense_preserving_probe(f: HarmonicMap, grid: DiskGrid | None = None) -> ProbeReport:
    """``min J > 0`` on the grid (local univalence, sense-preserving)."""
    grid = grid or DiskGrid()
    J = jacobian_on_grid(f, grid)
    m, z = _argmin(J, grid)
    return _report(m, z, STRICT_TOL, grid.size)


# ---------------------------------------------------------------------------
# directional convexity


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    monotone_segment_count: int
    simple_curve: bool
    ambiguous: bool = False


@dataclass(frozen=True)
class DirectionProbeReport:
    direction: float
    per_radius: tuple[RadiusResult, ...]
    verdict: str
    note: str = "convexity in a direction is tested as: the projection Im(e^{-i theta} f(r e^{it})) has exactly two monotone runs"

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "per_radius": [
                {
                    "radius": r.radius,
                    "monotone_segment_count": r.monotone_segment_count,
                    "simple_curve": r.simple_curve,
                    "ambiguous": r.ambiguous,
                }
                for r in self.per_radius
            ],
            "verdict": self.verdict,
            "note": self.note,
        }


def _curve_diameter(w: np.ndarray) -> float:
    return float(math.hypot(np.ptp(w.real), np.ptp(w.imag)))


def count_monotone_runs(p: np.ndarray, band: float) -> tuple[int, bool]:
    """Number of monotone runs of a closed sampled curve's height ``p``.

    Differences within ``band`` of zero are ignored.  A flat stretch flanked by
    the same sign could hide a pair of turns; it is flagged as ambiguous when
    the raw differences inside it do change sign.
    """
    d = np.roll(p, -1) - p
    s = np.where(np.abs(d) <= band, 0, np.sign(d)).astype(int)
    nz = s[s != 0]
    if nz.size == 0:
        return 0, True
    runs = int(np.count_nonzero(nz != np.roll(nz, 1)))
    if not np.any(s == 0):
        return runs, False
    start = int(np.flatnonzero(s)[0])
    r, raw = np.roll(s, -start), np.roll(np.sign(d), -start)
    prev, flat = int(r[0]), []
    for i in list(range(1, r.size)) + [0]:
        v = int(r[i])
        if v == 0:
            flat.append(i)
            continue
        if flat and v == prev and np.any(raw[flat] == -v):
            return runs, True
        flat, prev = [], v
    return runs, False


def _simple(w: np.ndarray) -> bool:
    return bool(LinearRing(np.column_stack((w.real, w.imag))).is_simple)


def direction_convexity_probe(f: HarmonicMap, theta: float, radii: Sequence[float] | None = None,
                              samples: int = DEFAULT_SAMPLES, tol: float = 1e-7) -> DirectionProbeReport:
    """Count monotone runs of ``Im(e^{-i theta} f(r e^{it}))`` on each circle.

    Pass needs exactly two runs (one rise, one fall) at every radius; the
    dead-band is ``tol`` times the curve diameter.
    """
    radii = tuple(DEFAULT_RADII if radii is None else radii)
    if samples < 256:
        raise ValueError("direction probe needs at least 256 samples")
    if any(not 0 < r <= MAX_R for r in radii):
        raise ValueError(f"probe radii must lie in (0, {MAX_R}]")
    rot = complex(math.cos(theta), -math.sin(theta))
    results = []
    for r in radii:
        w = hm.evaluate_on_circle(f, r, samples)
        runs, ambiguous = count_monotone_runs((rot * w).imag, tol * _curve_diameter(w))
        results.append(RadiusResult(float(r), runs, _simple(w), ambiguous and runs == 2))
    if any(r.monotone_segment_count != 2 for r in results):
        verdict = FAIL
    elif any(r.ambiguous for r in results):
        verdict = INCONCLUSIVE
    else:
        verdict = PASS
    return DirectionProbeReport(float(theta), tuple(results), verdict)


# ---------------------------------------------------------------------------
# injectivity on circles


def boundary_injectivity_probe(f: HarmonicMap, r: float, samples: int = DEFAULT_SAMPLES, min_gap: float = 0.0) -> ProbeReport:
    """Smallest distance between images of distinct sample points on ``|z| = r``.

    A self-crossing of the sampled closed polyline counts as distance zero.
    Pass iff the minimum exceeds ``min_gap``.
    """
    if not 0 < r < MAX_R:
        raise ValueError(f"injectivity probe radius must lie in (0, {MAX_R})")
    if samples > 8192 or samples < 8:
        raise ValueError("injectivity probe supports 8..8192 samples")
    w = hm.evaluate_on_circle(f, r, samples)
    xy = np.column_stack((w.real, w.imag))
    dist, idx = cKDTree(xy).query(xy, k=2)
    i = int(np.argmin(dist[:, 1]))
    gap = float(dist[i, 1])
    note = ""
    if not _simple(w):
        gap, note = 0.0, "sampled image curve crosses itself"
    z = r * complex(math.cos(2 * math.pi * i / samples), math.sin(2 * math.pi * i / samples))
    # ProbeReport passes on min > threshold - STRICT_TOL; shift so the test is min > min_gap
    return _report(gap, z, min_gap + STRICT_TOL, samples, note)


def emit_curve(f: HarmonicMap | PowerSeries, r: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Parameter values and image points of ``|z| = r``."""
    t = 2 * np.pi * np.arange(samples) / samples
    if isinstance(f, PowerSeries):
        w = ps.evaluate_on_circle(f, r, samples)
    else:
        w = hm.evaluate_on_circle(f, r, samples)
    return t, w
