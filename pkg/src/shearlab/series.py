"""Truncated power series with complex coefficients.

A :class:`PowerSeries` holds the coefficients ``c_0 .. c_N`` of a polynomial
approximation to an analytic function on the unit disk.  Coefficients live
either in a read-only ``complex128`` array (float mode) or in a tuple of
:class:`~shearlab.rational.GaussianRational` (exact mode).  Binary operations
truncate to the shorter operand; mixing an exact and a float operand yields a
float result.
"""

from __future__ import annotations

import json
import math
from typing import Callable, Iterable, Sequence

import numpy as np

from .rational import ONE, ZERO, GaussianRational

DEFAULT_ORDER = 64
ZERO_FLOOR = 1e-300


class PowerSeries:
    """Coefficients ``c_0 .. c_N`` of ``sum_k c_k z^k``, immutable."""

    __slots__ = ("_c", "exact")

    def __init__(self, coeffs: Iterable, exact: bool = False):
        if exact:
            c = tuple(GaussianRational.coerce(x) for x in coeffs)
            if not c:
                raise ValueError("a power series needs at least one coefficient")
        else:
            c = np.array([complex(x) for x in coeffs] if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=np.complex128)
            if c.ndim != 1 or c.size == 0:
                raise ValueError("coefficients must be a non-empty 1-d sequence")
            if not np.all(np.isfinite(c)):
                raise ValueError("coefficients must be finite")
            c.flags.writeable = False
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int, exact: bool = False) -> "PowerSeries":
        return cls([fn(k) for k in range(order + 1)], exact=exact)

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int | None = None, exact: bool = False) -> "PowerSeries":
        """Pad a short coefficient list with zeros up to ``order``."""
        coeffs = list(coeffs)
        order = len(coeffs) - 1 if order is None else order
        if len(coeffs) > order + 1:
            raise ValueError("polynomial degree exceeds the requested order")
        zero = ZERO if exact else 0
        return cls(coeffs + [zero] * (order + 1 - len(coeffs)), exact=exact)

    @classmethod
    def zeros(cls, order: int, exact: bool = False) -> "PowerSeries":
        return cls.polynomial([0], order, exact=exact)

    @classmethod
    def identity(cls, order: int, exact: bool = False) -> "PowerSeries":
        """The Hadamard identity ``z/(1-z)`` truncated at ``order``."""
        return cls.from_function(lambda k: 0 if k == 0 else 1, order, exact=exact)

    # basic access ---------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self):
        """Float mode: a read-only complex array.  Exact mode: a tuple."""
        return self._c

    def to_numpy(self) -> np.ndarray:
        if self.exact:
            return np.array([complex(c) for c in self._c], dtype=np.complex128)
        return self._c

    def to_float(self) -> "PowerSeries":
        return self if not self.exact else PowerSeries(self.to_numpy())

    def to_exact(self) -> "PowerSeries":
        if self.exact:
            return self
        return PowerSeries([GaussianRational(*_exact_pair(c)) for c in self._c], exact=True)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero series)."""
        if self.exact:
            for k in range(self.order, -1, -1):
                if self._c[k]:
                    return k
            return 0
        nz = np.flatnonzero(self._c)
        return int(nz[-1]) if nz.size else 0

    def is_normalized(self, tol: float = 1e-12) -> bool:
        if self.order < 1:
            return False
        if self.exact:
            return self._c[0] == 0 and self._c[1] == 1
        return abs(self._c[0]) <= tol and abs(self._c[1] - 1) <= tol

    def truncate(self, order: int) -> "PowerSeries":
        if order < 0 or order > self.order:
            raise ValueError(f"cannot truncate order {self.order} series to order {order}")
        return PowerSeries(self._c[: order + 1], exact=self.exact)

    def divide_by_z(self) -> "PowerSeries":
        """Coefficient shift ``f(z)/z``; requires ``c_0 = 0``."""
        if self._c[0] != 0:
            raise ValueError("f(z)/z is not a power series when c_0 != 0")
        if self.order == 0:
            raise ValueError("order-0 series has nothing left after dividing by z")
        return PowerSeries(self._c[1:], exact=self.exact)

    def max_abs_diff(self, other: "PowerSeries") -> float:
        a, b = _align(self.to_float(), other.to_float())
        return float(np.max(np.abs(a._c - b._c)))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        a, b = _align(self, other)
        if a.exact:
            return PowerSeries([x + y for x, y in zip(a._c, b._c)], exact=True)
        return PowerSeries(a._c + b._c)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        a, b = _align(self, other)
        if a.exact:
            return PowerSeries([x - y for x, y in zip(a._c, b._c)], exact=True)
        return PowerSeries(a._c - b._c)

    def __neg__(self):
        if self.exact:
            return PowerSeries([-x for x in self._c], exact=True)
        return PowerSeries(-self._c)

    def __mul__(self, scalar):
        """Scalar multiple.  Series products are explicit: :func:`hadamard`, :func:`cauchy_product`."""
        if isinstance(scalar, PowerSeries):
            raise TypeError("use hadamard() or cauchy_product() to multiply two series")
        if self.exact and GaussianRational.is_exact_scalar(scalar):
            s = GaussianRational.coerce(scalar)
            return PowerSeries([s * x for x in self._c], exact=True)
        return PowerSeries(self.to_numpy() * complex(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PowerSeries) or self.order != other.order:
            return NotImplemented if not isinstance(other, PowerSeries) else False
        if self.exact and other.exact:
            return self._c == other._c
        return bool(np.array_equal(self.to_numpy(), other.to_numpy()))

    __hash__ = None

    def __repr__(self):
        head = ", ".join(str(c) if self.exact else f"{c:.6g}" for c in self._c[:6])
        tail = ", ..." if self.order > 5 else ""
        mode = "exact" if self.exact else "float"
        return f"PowerSeries([{head}{tail}], order={self.order}, {mode})"

    # evaluation -----------------------------------------------------------
    def __call__(self, z):
        return evaluate(self, z)

    # interchange ----------------------------------------------------------
    def to_dict(self) -> dict:
        doc = {"order": self.order, "coeffs": [[c.real, c.imag] for c in self.to_numpy().tolist()]}
        if self.exact:
            doc["coeffs_exact"] = [c.to_pair() for c in self._c]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "PowerSeries":
        if "coeffs_exact" in doc:
            s = cls([GaussianRational(re, im) for re, im in doc["coeffs_exact"]], exact=True)
        elif "coeffs" in doc:
            s = cls([complex(re, im) for re, im in doc["coeffs"]])
        else:
            raise ValueError("series document needs 'coeffs' or 'coeffs_exact'")
        if "order" in doc and int(doc["order"]) != s.order:
            raise ValueError(f"declared order {doc['order']} does not match {s.order + 1} coefficients")
        return s

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        return cls.from_dict(json.loads(text))


def _exact_pair(c: complex) -> tuple:
    from fractions import Fraction

    return Fraction(c.real), Fraction(c.imag)


def _align(f: PowerSeries, g: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    """Common mode and the shorter truncation order."""
    if f.exact != g.exact:
        f, g = f.to_float(), g.to_float()
    n = min(f.order, g.order)
    if f.order != n:
        f = f.truncate(n)
    if g.order != n:
        g = g.truncate(n)
    return f, g


# ---------------------------------------------------------------------------
# operations


def salagean_apply(f: PowerSeries, n: int) -> PowerSeries:
    """Salagean operator ``D^n``: ``c_k -> k^n c_k``.

    Negative ``n`` is the formal inverse and needs ``c_0 = 0``.
    """
    if not isinstance(n, (int, np.integer)):
        raise TypeError("the Salagean exponent must be an integer")
    n = int(n)
    if n < 0 and f[0] != 0:
        raise ValueError("D^n with n < 0 is undefined when c_0 != 0")
    if f.exact:
        out = [f[0] if n >= 0 else ZERO]
        out += [f[k] * GaussianRational(k) ** n for k in range(1, f.order + 1)]
        return PowerSeries(out, exact=True)
    k = np.arange(f.order + 1, dtype=np.float64)
    w = np.empty_like(k)
    w[0] = 1.0 if n >= 0 else 0.0
    w[1:] = k[1:] ** n
    return PowerSeries(f.coeffs * w)


def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Coefficient-wise (Hadamard) product ``f * g``."""
    a, b = _align(f, g)
    if a.exact:
        return PowerSeries([x * y for x, y in zip(a.coeffs, b.coeffs)], exact=True)
    return PowerSeries(a.coeffs * b.coeffs)


def hadamard_inverse(f: PowerSeries) -> PowerSeries:
    """Inverse under Hadamard product: ``c_k -> 1/c_k`` for ``k >= 1``, ``c_0 -> 0``."""
    if f.exact:
        for k in range(1, f.order + 1):
            if not f[k]:
                raise ValueError(f"coefficient {k} is zero; no Hadamard inverse")
        return PowerSeries([ZERO] + [ONE / f[k] for k in range(1, f.order + 1)], exact=True)
    c = f.coeffs[1:]
    floor = ZERO_FLOOR * max(float(np.max(np.abs(f.coeffs))), 1.0)
    bad = np.flatnonzero(np.abs(c) < floor)
    if bad.size:
        raise ValueError(f"coefficient {int(bad[0]) + 1} is below the zero floor; no Hadamard inverse")
    return PowerSeries(np.concatenate(([0.0], 1.0 / c)))


def hadamard_power(f: PowerSeries, n: int) -> PowerSeries:
    """``(f)_*^n``; ``n = 0`` gives the identity, negative ``n`` powers the inverse."""
    if n == 0:
        return PowerSeries.identity(f.order, exact=f.exact)
    base = f if n > 0 else hadamard_inverse(f)
    out = base
    for _ in range(abs(n) - 1):
        out = hadamard(out, base)
    return out


def cauchy_product(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Ordinary series product, truncated at the shorter order."""
    a, b = _align(f, g)
    n = a.order
    if not a.exact:
        da, db = a.degree(), b.degree()
        full = np.convolve(a.coeffs[: da + 1], b.coeffs[: db + 1])
        out = np.zeros(n + 1, dtype=np.complex128)
        m = min(n + 1, full.size)
        out[:m] = full[:m]
        return PowerSeries(out)
    ac, bc = a.coeffs, b.coeffs
    out = [ZERO] * (n + 1)
    nz_b = [(j, y) for j, y in enumerate(bc) if y]
    for i, x in enumerate(ac):
        if not x:
            continue
        for j, y in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + x * y
    return PowerSeries(out, exact=True)


def derivative(f: PowerSeries) -> PowerSeries:
    """``f'``, of truncation order ``N - 1``."""
    if f.order == 0:
        raise ValueError("cannot differentiate an order-0 series")
    if f.exact:
        return PowerSeries([f[k + 1] * (k + 1) for k in range(f.order)], exact=True)
    return PowerSeries(f.coeffs[1:] * np.arange(1, f.order + 1))


def partial_sum(f: PowerSeries, p: int) -> PowerSeries:
    """Zero every coefficient above index ``p``; the order is kept."""
    if p < 1:
        raise ValueError(f"partial sum index must be >= 1, got {p}")
    if p > f.order:
        raise ValueError(f"partial sum index {p} exceeds truncation order {f.order}")
    if f.exact:
        return PowerSeries(list(f.coeffs[: p + 1]) + [ZERO] * (f.order - p), exact=True)
    c = np.array(f.coeffs)
    c[p + 1 :] = 0
    return PowerSeries(c)


def binomial_series(c, p: int, order: int, exact: bool = False) -> PowerSeries:
    """Expansion of ``(1 - c z)^(-p)``: coefficient ``C(k+p-1, p-1) c^k``."""
    if p < 1:
        raise ValueError("binomial_series needs p >= 1")
    if exact:
        cc = GaussianRational.coerce(c)
        out, power = [], ONE
        for k in range(order + 1):
            out.append(power * math.comb(k + p - 1, p - 1))
            power = power * cc
        return PowerSeries(out, exact=True)
    k = np.arange(order + 1)
    binom = np.array([math.comb(int(j) + p - 1, p - 1) for j in k], dtype=np.float64)
    return PowerSeries(binom * _powers(complex(c), order))


# 2 pi split into a 24-bit head and a tail, for exact products with small integers
_TWO_PI_HI = float(np.float32(2 * math.pi))
_TWO_PI_LO = 2 * math.pi - _TWO_PI_HI


def _powers(c: complex, order: int) -> np.ndarray:
    """``c^k`` for ``k = 0..order`` in polar form.

    The phase ``k arg c`` is reduced mod 2 pi with a split argument so its
    error does not grow with ``k``; the cancellation in ``(1 - c z)^2 f`` at
    high order depends on this.
    """
    k = np.arange(order + 1, dtype=np.float64)
    r = abs(c)
    if r == 0:
        out = np.zeros(order + 1, dtype=np.complex128)
        out[0] = 1
        return out
    theta = math.atan2(c.imag, c.real)
    hi = float(np.float32(theta))
    lo = theta - hi
    kh = k * hi
    m = np.round(kh / (2 * math.pi))
    phase = (kh - m * _TWO_PI_HI) - m * _TWO_PI_LO + k * lo
    return (r**k) * np.exp(1j * phase)


def _check_disk(z) -> np.ndarray:
    za = np.asarray(z, dtype=np.complex128)
    if np.any(~np.isfinite(za)) or np.any(np.abs(za) >= 1.0):
        raise ValueError("evaluation point must lie in the open unit disk |z| < 1")
    return za


def evaluate(f: PowerSeries, z):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array), ``|z| < 1``."""
    za = _check_disk(z)
    c = f.to_numpy()
    d = f.degree()
    acc = np.full(za.shape, c[d], dtype=np.complex128)
    for k in range(d - 1, -1, -1):
        acc = acc * za + c[k]
    return complex(acc) if acc.ndim == 0 else acc


def evaluate_on_circle(f: PowerSeries, r: float, samples: int) -> np.ndarray:
    """Values at ``r exp(2 pi i j / samples)``, ``j = 0..samples-1``.

    Folds ``c_k r^k`` modulo ``samples`` and takes one FFT, so long
    truncations cost ``O(N + M log M)`` per circle.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("circle radius must satisfy 0 <= r < 1")
    c = f.to_numpy()
    d = f.degree()
    weighted = c[: d + 1] * (r ** np.arange(d + 1))
    pad = (-weighted.size) % samples
    folded = np.concatenate((weighted, np.zeros(pad, dtype=np.complex128))).reshape(-1, samples).sum(axis=0)
    return np.fft.ifft(folded) * samples


def order_for_radius(r_max: float, growth: int = 3, tol: float = 1e-12) -> int:
    """Smallest ``N`` with ``N^growth r^N / (1 - r) <= tol``.

    Coefficients of the rational maps used here grow at most polynomially;
    ``growth`` bounds the exponent after one differentiation.
    """
    if not 0.0 < r_max < 1.0:
        raise ValueError("r_max must lie in (0, 1)")
    n = 16
    while n ** growth * r_max ** n / (1.0 - r_max) > tol:
        n = int(n * 1.1) + 1
    return n
