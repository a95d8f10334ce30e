"""Named analytic kernels and harmonic maps.

Harmonic maps are expanded from their defining rational expressions with
:func:`~shearlab.series.cauchy_product` against ``(1 - c z)^(-p)``; the closed
coefficient formulas are kept out of this module so tests can use them as an
independent check.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import series as ps
from .harmonic import HarmonicMap
from .rational import GaussianRational
from .series import DEFAULT_ORDER, PowerSeries

KERNEL_TAGS = ("half_plane", "starlike_kernel", "log_kernel", "geometric_partial", "polylog")
HARMONIC_TAGS = ("koebe_K", "halfplane_L", "slanted_f_alpha", "family_f_a", "family_F_b", "shear_built")


@dataclass(frozen=True)
class KernelKind:
    tag: str
    alpha: complex | GaussianRational = 1
    m: int = 0
    n: int = 1

    def __post_init__(self):
        if self.tag not in KERNEL_TAGS:
            raise ValueError(f"unknown kernel tag {self.tag!r}; expected one of {KERNEL_TAGS}")
        if self.tag in ("half_plane", "starlike_kernel", "log_kernel") and abs(abs(complex(self.alpha)) - 1) > 1e-12:
            raise ValueError(f"alpha must be unimodular, |alpha| = {abs(complex(self.alpha))}")
        if self.tag == "polylog" and self.m < 0:
            raise ValueError("polylog exponent m must be >= 0")
        if self.tag == "geometric_partial" and self.n < 1:
            raise ValueError("geometric_partial length n must be >= 1")


def kernel(kind: KernelKind, order: int = DEFAULT_ORDER, exact: bool = False) -> PowerSeries:
    """Coefficient table of a named analytic kernel.

    half_plane      z/(1 - a z)                 a^(k-1)
    starlike_kernel z/(1 - a z)^2               k a^(k-1)
    log_kernel      a log 1/(1 - z/a)           1/(k a^(k-1))
    geometric_partial  l_n = z + ... + z^n      1 for k <= n
    polylog         f_m = sum z^k / k^m         1/k^m
    """
    if order < 2:
        raise ValueError("kernels need truncation order >= 2")
    if exact:
        a = GaussianRational.coerce(kind.alpha)
        if kind.tag in ("half_plane", "starlike_kernel", "log_kernel") and a.abs2() != 1:
            raise ValueError("exact kernels need an exactly unimodular alpha")
        one = GaussianRational(1)
    else:
        a = complex(kind.alpha)
        one = 1.0

    def coeff(k: int):
        if k == 0:
            return 0
        if kind.tag == "half_plane":
            return a ** (k - 1)
        if kind.tag == "starlike_kernel":
            return k * a ** (k - 1)
        if kind.tag == "log_kernel":
            return one / (k * a ** (k - 1))
        if kind.tag == "geometric_partial":
            return 1 if k <= kind.n else 0
        return one / (k ** kind.m) if exact else 1.0 / float(k) ** kind.m

    return PowerSeries.from_function(coeff, order, exact=exact)


@dataclass(frozen=True)
class NamedHarmonic:
    """Parameters of a named harmonic map.

    ``alpha`` is the slant angle of ``f_alpha``; ``a`` parametrises ``f_a``
    (``a >= -1``, ``a != 0``); ``b`` parametrises ``F_b`` (``|b| <= 1/2``).
    """

    tag: str
    alpha: float = 0.0
    a: float | Fraction | None = None
    b: float | Fraction | None = None

    def __post_init__(self):
        if self.tag not in HARMONIC_TAGS:
            raise ValueError(f"unknown map tag {self.tag!r}; expected one of {HARMONIC_TAGS}")
        if self.tag == "family_f_a":
            if self.a is None or self.a < -1 or self.a == 0:
                raise ValueError(f"f_a needs a >= -1 and a != 0, got a = {self.a}")
        if self.tag == "family_F_b":
            if self.b is None or abs(self.b) > 0.5:
                raise ValueError(f"F_b needs |b| <= 1/2, got b = {self.b}")

    @property
    def b_range(self) -> str:
        """Which parameter range ``b`` belongs to: the counterexample's ``0 < b < 1/2`` or only ``|b| <= 1/2``."""
        if self.tag != "family_F_b":
            return ""
        return "open_half_interval" if 0 < self.b < 0.5 else "closed_symmetric_interval"


def _to_exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def unit(angle: float, exact: bool = False):
    """``e^{i angle}``; exact only for multiples of pi/2."""
    if not exact:
        return cmath.exp(1j * angle)
    q = angle / (math.pi / 2)
    if abs(q - round(q)) > 1e-12:
        raise ValueError(f"e^(i {angle}) is not exactly representable")
    return GaussianRational(0, 1) ** (round(q) % 4)


def _rational_map(numer: list, c, p: int, order: int, exact: bool) -> PowerSeries:
    """Expand ``numer(z) / (1 - c z)^p``."""
    return ps.cauchy_product(PowerSeries.polynomial(numer, order, exact=exact), ps.binomial_series(c, p, order, exact=exact))


def named_harmonic(named: NamedHarmonic, order: int = DEFAULT_ORDER, exact: bool = False) -> HarmonicMap:
    """Expand a named harmonic map to truncation order ``order``."""
    if order < 4:
        raise ValueError("named harmonic maps need truncation order >= 4")
    F = _to_exact if exact else float
    half = F(Fraction(1, 2)) if exact else 0.5
    sixth = Fraction(1, 6) if exact else 1.0 / 6.0
    if named.tag == "koebe_K":
        h = _rational_map([0, 1, -half, sixth], 1, 3, order, exact)
        g = _rational_map([0, 0, half, sixth], 1, 3, order, exact)
    elif named.tag == "halfplane_L":
        h = _rational_map([0, 1, -half], 1, 2, order, exact)
        g = _rational_map([0, 0, -half], 1, 2, order, exact)
    elif named.tag == "slanted_f_alpha":
        c = unit(named.alpha, exact)
        h = _rational_map([0, 1, -c * half], c, 2, order, exact)
        g = _rational_map([0, 0, -(c ** 3) * half], c, 2, order, exact)
    elif named.tag == "family_f_a":
        inv_a = 1 / F(named.a)
        h = _rational_map([0, 1, inv_a], 1, 1, order, exact)
        g = _rational_map([0, 0, inv_a], 1, 1, order, exact)
    elif named.tag == "family_F_b":
        b = F(named.b)
        h = _rational_map([0, 1, 1 + 2 * b], 1, 3, order, exact)
        g = _rational_map([0, 0, 2 * b], 1, 3, order, exact)
    else:
        raise ValueError("shear-built maps need explicit inputs; call shear_built()")
    return HarmonicMap(h, g)


def shear_built(rhs: PowerSeries, gamma: float, h: PowerSeries) -> HarmonicMap:
    """The map ``(h, g)`` with ``g = e^{2 i gamma} (h - rhs)``, so ``h - e^{-2 i gamma} g = rhs``."""
    if rhs.order != h.order:
        raise ValueError("rhs and h must share a truncation order")
    if rhs[0] != 0 or h[0] != 0:
        raise ValueError("rhs and h must vanish at the origin")
    diff = h - rhs
    g = diff if (gamma == 0 and diff.exact) else diff * cmath.exp(2j * gamma)
    return HarmonicMap(h, g)


# ---------------------------------------------------------------------------
# CLI names

_ANGLE = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(pi)?\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``0.3``, ``pi``, ``-pi/4``, ``2pi/3`` or ``3*pi/8`` into radians."""
    m = _ANGLE.match(text)
    if not m or (m.group(2) is None and m.group(3) is None):
        raise ValueError(f"cannot parse angle {text!r}")
    sign, num, pi, den = m.groups()
    value = float(num) if num else 1.0
    if pi:
        value *= math.pi
    if den:
        value /= float(den)
    return -value if sign == "-" else value


def _parse_number(text: str):
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def from_name(name: str, order: int = DEFAULT_ORDER, exact: bool = False) -> PowerSeries | HarmonicMap:
    """Resolve a name such as ``K``, ``f_alpha:pi/3`` or ``polylog:3``."""
    head, _, rest = name.partition(":")
    if head == "K":
        return named_harmonic(NamedHarmonic("koebe_K"), order, exact)
    if head == "L":
        return named_harmonic(NamedHarmonic("halfplane_L"), order, exact)
    if head == "f_alpha":
        return named_harmonic(NamedHarmonic("slanted_f_alpha", alpha=parse_angle(rest)), order, exact)
    if head == "f_a":
        return named_harmonic(NamedHarmonic("family_f_a", a=_parse_number(rest)), order, exact)
    if head == "F_b":
        return named_harmonic(NamedHarmonic("family_F_b", b=_parse_number(rest)), order, exact)
    if head == "polylog":
        return kernel(KernelKind("polylog", m=int(rest)), order, exact)
    if head == "lpartial":
        return kernel(KernelKind("geometric_partial", n=int(rest)), order, exact)
    if head == "kernel":
        which, _, angle = rest.partition(":")
        tags = {"half": "half_plane", "star": "starlike_kernel", "log": "log_kernel"}
        if which not in tags:
            raise ValueError(f"kernel kind must be one of {sorted(tags)}, got {which!r}")
        theta = parse_angle(angle) if angle else 0.0
        return kernel(KernelKind(tags[which], alpha=unit(theta, exact)), order, exact)
    raise ValueError(
        f"unknown name {name!r}; expected K, L, f_alpha:<angle>, f_a:<a>, F_b:<b>, "
        "polylog:<m>, lpartial:<n>, kernel:<half|star|log>:<angle>"
    )


NAMES = ("K", "L", "f_alpha:<angle>", "f_a:<a>", "F_b:<b>", "polylog:<m>", "lpartial:<n>", "kernel:<half|star|log>:<angle>")
