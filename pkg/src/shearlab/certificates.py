"""Coefficient sufficient conditions for class membership.

Each check computes a weighted coefficient sum ``sum_{n>=2} w_n |a_n|`` and
compares it with a bound.  Equality certifies.  These are one-sided: a
``not_certified`` verdict says nothing about membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .series import PowerSeries

BOUNDARY_TOL = 1e-12

CERTIFIED = "certified"
NOT_CERTIFIED = "not_certified"

# preset id -> (class claim, short description)
PRESETS = {
    "n_squared": ("direction_convex(|beta+gamma|<=theta)", "sum n^2 |a_n| <= 1/sqrt(2(1-cos 2 theta))"),
    "n_cubed": ("harmonic_convex", "sum n^3 |a_n| <= 1"),
    "directional": ("direction_convex(|beta|<=theta)", "sum |a_n| sqrt(2n(n-1)(1-cos 2 theta)+1) <= 1"),
    "odd": ("harmonic_convex", "sum (2n-1) |a_n| <= 1"),
}


@dataclass(frozen=True)
class Certificate:
    class_claim: str
    weighted_sum: float
    bound: float
    verdict: str
    weights_id: str
    exact_sum: Fraction | None = None
    note: str = ""
    implied: tuple["Certificate", ...] = field(default_factory=tuple)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        doc = {
            "class_claim": self.class_claim,
            "weighted_sum": self.weighted_sum,
            "bound": self.bound,
            "verdict": self.verdict,
            "weights_id": self.weights_id,
        }
        if self.exact_sum is not None:
            doc["exact_sum"] = str(self.exact_sum)
        if self.note:
            doc["note"] = self.note
        if self.implied:
            doc["implied"] = [c.to_dict() for c in self.implied]
        return doc


def _require_normalized(f: PowerSeries) -> None:
    if not f.is_normalized():
        raise ValueError("coefficient certificates need a normalized series (c_0 = 0, c_1 = 1)")


def _check_order_param(alpha) -> None:
    if not 0 <= alpha < 1:
        raise ValueError(f"order parameter must satisfy 0 <= alpha < 1, got {alpha}")


def _abs_coeffs(f: PowerSeries) -> np.ndarray:
    return np.abs(f.to_numpy()[2:])


def _exact_abs(f: PowerSeries) -> list[Fraction] | None:
    """Exact |a_n| for n >= 2 when every coefficient is a real rational."""
    if not f.exact or not all(c.is_real() for c in f.coeffs[2:]):
        return None
    return [abs(c.re) for c in f.coeffs[2:]]


def _verdict(total: float, bound: float, exact_total=None, exact_bound=None) -> str:
    if exact_total is not None and exact_bound is not None:
        return CERTIFIED if exact_total <= exact_bound else NOT_CERTIFIED
    return CERTIFIED if total <= bound + BOUNDARY_TOL else NOT_CERTIFIED


def _weighted(f: PowerSeries, weight, exact_weight=None):
    n = np.arange(2, f.order + 1, dtype=np.float64)
    total = math.fsum(weight(n) * _abs_coeffs(f))
    exact_total = None
    ex = _exact_abs(f)
    if ex is not None and exact_weight is not None:
        exact_total = sum((exact_weight(k) * a for k, a in enumerate(ex, start=2) if a), Fraction(0))
        total = float(exact_total)
    return total, exact_total


def starlike_coeff_certificate(f: PowerSeries, alpha: float = 0.0) -> Certificate:
    """``sum (n - alpha)|a_n| <= 1 - alpha`` certifies starlike of order ``alpha``."""
    return salagean_coeff_certificate(f, 1, alpha)


def salagean_coeff_certificate(f: PowerSeries, m: int, alpha: float = 0.0) -> Certificate:
    """``sum n^(m-1) (n - alpha)|a_n| <= 1 - alpha`` certifies ``f in S_{m-1}(alpha)``."""
    _require_normalized(f)
    _check_order_param(alpha)
    if m < 1:
        raise ValueError(f"salagean certificate needs m >= 1, got {m}")
    exact_alpha = Fraction(alpha) if isinstance(alpha, (int, Fraction)) else None
    if exact_alpha is None and isinstance(alpha, float):
        exact_alpha = Fraction(alpha)
    total, exact_total = _weighted(
        f,
        lambda n: n ** (m - 1) * (n - float(alpha)),
        lambda k: Fraction(k) ** (m - 1) * (k - exact_alpha),
    )
    bound = 1.0 - float(alpha)
    exact_bound = 1 - exact_alpha
    claim = f"starlike({float(alpha):g})" if m == 1 else f"n_starlike({m - 1}, {float(alpha):g})"
    return Certificate(
        class_claim=claim,
        weighted_sum=total,
        bound=bound,
        verdict=_verdict(total, bound, exact_total, exact_bound),
        weights_id="starlike" if m == 1 else f"salagean:{m}",
        exact_sum=exact_total,
    )


def weighted_coeff_certificate(f: PowerSeries, weights_id: str, theta: float = math.pi / 2) -> Certificate:
    """Evaluate one of the preset direction/convexity inequalities.

    ``n_squared``   theta in [0, pi/2]; bound 1/sqrt(2(1 - cos 2 theta)), infinite at theta = 0.
                    Supports directions -beta with |beta + gamma| <= theta (needs phi in S_2 as well).
    ``n_cubed``     bound 1, weights n^3; supports harmonic convexity.
    ``directional`` theta in [0, pi); weights sqrt(2n(n-1)(1 - cos 2 theta) + 1), bound 1;
                    supports directions -beta with |beta| <= theta.  When cos 2 theta <= 1/4 the
                    starlike certificate it implies is attached.
    ``odd``         weights 2n - 1, bound 1 (the directional preset at theta = pi/2).
    """
    if weights_id not in PRESETS:
        raise ValueError(f"unknown weights_id {weights_id!r}; expected one of {sorted(PRESETS)}")
    _require_normalized(f)
    claim, _ = PRESETS[weights_id]
    note = ""
    implied: tuple[Certificate, ...] = ()
    if weights_id == "n_squared":
        if not 0 <= theta <= math.pi / 2:
            raise ValueError("n_squared preset needs theta in [0, pi/2]")
        total, exact_total = _weighted(f, lambda n: n**2, lambda k: Fraction(k * k))
        denom = 2.0 * (1.0 - math.cos(2 * theta))
        if denom <= 0.0:
            bound = math.inf
            note = "theta = 0: bound is infinite, certificate covers the single direction -gamma only"
        else:
            bound = 1.0 / math.sqrt(denom)
        verdict = _verdict(total, bound)
        claim = f"direction_convex(|beta+gamma|<={theta:g})"
    elif weights_id == "n_cubed":
        total, exact_total = _weighted(f, lambda n: n**3, lambda k: Fraction(k**3))
        bound = 1.0
        verdict = _verdict(total, bound, exact_total, Fraction(1))
    elif weights_id == "odd":
        total, exact_total = _weighted(f, lambda n: 2 * n - 1, lambda k: Fraction(2 * k - 1))
        bound = 1.0
        verdict = _verdict(total, bound, exact_total, Fraction(1))
    else:
        if not 0 <= theta < math.pi:
            raise ValueError("directional preset needs theta in [0, pi)")
        c2 = math.cos(2 * theta)
        total, exact_total = _weighted(f, lambda n: np.sqrt(2 * n * (n - 1) * (1 - c2) + 1))
        bound = 1.0
        verdict = _verdict(total, bound)
        claim = f"direction_convex(|beta|<={theta:g})"
        if c2 <= 0.25 + 1e-15:
            implied = (starlike_coeff_certificate(f, 0.0),)
            note = "cos 2 theta <= 1/4: the inequality also implies sum n|a_n| <= 1"
    return Certificate(
        class_claim=claim,
        weighted_sum=total,
        bound=bound,
        verdict=verdict,
        weights_id=weights_id,
        exact_sum=exact_total,
        note=note,
        implied=implied,
    )


def parse_class(text: str) -> tuple[str, tuple]:
    """Parse a CLI class name: ``starlike:<alpha>``, ``salagean:<m>:<alpha>`` or ``<preset>``."""
    head, _, rest = text.partition(":")
    parts = [p for p in rest.split(":") if p] if rest else []
    if head == "starlike":
        return "starlike", (_parse_alpha(parts[0]) if parts else 0.0,)
    if head in ("salagean", "n_starlike"):
        if not parts:
            raise ValueError("salagean class needs m, e.g. salagean:3:0")
        return "salagean", (int(parts[0]), _parse_alpha(parts[1]) if len(parts) > 1 else 0.0)
    if head in PRESETS:
        return head, ()
    raise ValueError(f"unknown class {text!r}; expected starlike:<alpha>, salagean:<m>:<alpha> or one of {sorted(PRESETS)}")


def _parse_alpha(text: str):
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def certify(f: PowerSeries, class_spec: str, theta: float = math.pi / 2) -> Certificate:
    kind, args = parse_class(class_spec)
    if kind == "starlike":
        return starlike_coeff_certificate(f, *args)
    if kind == "salagean":
        return salagean_coeff_certificate(f, *args)
    return weighted_coeff_certificate(f, kind, theta)
