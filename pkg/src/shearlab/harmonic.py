"""Planar harmonic maps ``f = h + conj(g)`` and their convolutions."""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass

import numpy as np

from . import series as ps
from .series import PowerSeries

DILATATION_FLOOR = 1e-14


@dataclass(frozen=True)
class HarmonicMap:
    """Analytic part ``h`` and co-analytic part ``g`` of ``f = h + conj(g)``."""

    h: PowerSeries
    g: PowerSeries

    def __post_init__(self):
        if self.h.order != self.g.order:
            raise ValueError(f"h and g must share a truncation order ({self.h.order} != {self.g.order})")

    @classmethod
    def analytic(cls, h: PowerSeries) -> "HarmonicMap":
        return cls(h, PowerSeries.zeros(h.order, exact=h.exact))

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def exact(self) -> bool:
        return self.h.exact and self.g.exact

    def is_normalized(self, tol: float = 1e-12) -> bool:
        g = self.g.to_float().coeffs
        return self.h.is_normalized(tol) and abs(g[0]) <= tol and abs(g[1]) <= tol

    def to_float(self) -> "HarmonicMap":
        return HarmonicMap(self.h.to_float(), self.g.to_float())

    def truncate(self, order: int) -> "HarmonicMap":
        return HarmonicMap(self.h.truncate(order), self.g.truncate(order))

    def __call__(self, z):
        return evaluate(self, z)

    def to_dict(self) -> dict:
        return {"h": self.h.to_dict(), "g": self.g.to_dict()}

    @classmethod
    def from_dict(cls, doc: dict) -> "HarmonicMap":
        return cls(PowerSeries.from_dict(doc["h"]), PowerSeries.from_dict(doc["g"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HarmonicMap":
        return cls.from_dict(json.loads(text))


def evaluate(f: HarmonicMap, z):
    return ps.evaluate(f.h, z) + np.conj(ps.evaluate(f.g, z))


def evaluate_on_circle(f: HarmonicMap, r: float, samples: int) -> np.ndarray:
    return ps.evaluate_on_circle(f.h, r, samples) + np.conj(ps.evaluate_on_circle(f.g, r, samples))


def tilde_convolve(f: HarmonicMap, phi: PowerSeries) -> HarmonicMap:
    """``f ~* phi = h*phi + conj(g*phi)`` for analytic ``phi``."""
    return HarmonicMap(ps.hadamard(f.h, phi), ps.hadamard(f.g, phi))


def harmonic_convolve(f: HarmonicMap, F: HarmonicMap) -> HarmonicMap:
    """``f * F = h*H + conj(g*G)``."""
    return HarmonicMap(ps.hadamard(f.h, F.h), ps.hadamard(f.g, F.g))


def harmonic_partial_sum(f: HarmonicMap, p: int) -> HarmonicMap:
    """Truncate both parts at degree ``p`` (same as ``f ~* l_p``)."""
    return HarmonicMap(ps.partial_sum(f.h, p), ps.partial_sum(f.g, p))


def jacobian(f: HarmonicMap, z):
    """``|h'(z)|^2 - |g'(z)|^2``; scalar in, float out, array in, array out."""
    hp = ps.evaluate(ps.derivative(f.h), z)
    gp = ps.evaluate(ps.derivative(f.g), z)
    J = np.abs(hp) ** 2 - np.abs(gp) ** 2
    return float(J) if np.ndim(J) == 0 else J


def jacobian_on_circle(f: HarmonicMap, r: float, samples: int) -> np.ndarray:
    hp = ps.evaluate_on_circle(ps.derivative(f.h), r, samples)
    gp = ps.evaluate_on_circle(ps.derivative(f.g), r, samples)
    return np.abs(hp) ** 2 - np.abs(gp) ** 2


def dilatation(f: HarmonicMap, z, floor: float = DILATATION_FLOOR):
    """Second complex dilatation ``g'(z)/h'(z)``.

    Raises ``ValueError`` at points where ``|h'|`` falls below ``floor``.
    """
    hp = np.asarray(ps.evaluate(ps.derivative(f.h), z))
    gp = np.asarray(ps.evaluate(ps.derivative(f.g), z))
    bad = np.abs(hp) < floor
    if np.any(bad):
        where = np.asarray(z, dtype=complex)[bad] if np.ndim(z) else complex(z)
        raise ValueError(f"degenerate point for the dilatation: h' vanishes near {where}")
    w = gp / hp
    return complex(w) if w.ndim == 0 else w


def shear_slice(f: HarmonicMap, theta: float) -> PowerSeries:
    """Analytic slice ``h - e^{2 i theta} g``.

    Hypotheses written as ``h - e^{-2 i beta} g`` correspond to ``theta = -beta``.
    """
    return f.h - f.g * cmath.exp(2j * theta) if not _exact_twist(f, theta) else f.h - f.g


def _exact_twist(f: HarmonicMap, theta: float) -> bool:
    # keep exact arithmetic for the untwisted slice
    return f.exact and theta == 0
