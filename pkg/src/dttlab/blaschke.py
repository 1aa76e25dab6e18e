"""Finite Blaschke products: evaluation, Taylor windows, divisibility.

A finite Blaschke product is determined by its zero multiset inside the
open disk and a unimodular constant.  Zero multisets double as the
numerical stand-in for spectra of the induced composition data, and
greatest common inner divisors reduce to multiset intersection at a
clustering tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AmbiguousClusteringError,
    PoleProximityError,
    PreconditionError,
)
from .fourier import FourierVector

# Zeros closer than this to the unit circle are rejected at construction.
MODULUS_MARGIN = 1e-10

# Two zeros within this distance are considered the same point.
CLUSTER_TOL = 1e-8

# Denominator factors smaller than this abort evaluation.
POLE_TOL = 1e-14


@dataclass(eq=False)
class BlaschkeProduct:
    """Product of disk automorphism factors (z - a)/(1 - conj(a) z) times a constant."""

    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    constant: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        z = np.asarray(self.zeros, dtype=complex).ravel()
        if len(z) and np.max(np.abs(z)) >= 1.0 - MODULUS_MARGIN:
            raise PreconditionError("Blaschke zeros must lie strictly inside the disk")
        if abs(abs(complex(self.constant)) - 1.0) > 1e-12:
            raise PreconditionError("Blaschke constant must be unimodular")
        self.zeros = z
        self.constant = complex(self.constant)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z: np.ndarray | complex) -> np.ndarray | complex:
        return self.eval(z)

    def eval(self, z: np.ndarray | complex) -> np.ndarray | complex:
        """Evaluate at points of the plane (poles at reflected zeros excluded)."""
        pts = np.asarray(z, dtype=complex)
        out = np.full(pts.shape, self.constant, dtype=complex)
        for a in self.zeros:
            den = 1.0 - np.conj(a) * pts
            if np.min(np.abs(den)) < POLE_TOL:
                raise PoleProximityError("evaluation point too close to a reflected pole")
            out = out * (pts - a) / den
        if np.isscalar(z):
            return complex(out)
        return out

    def series(self, radius: int) -> FourierVector:
        """Taylor window: coefficients of z^0..z^radius, exact up to the window.

        Computed by polynomial long division against the denominator
        power series, so no boundary sampling or aliasing is involved.
        """
        num = _poly_from_roots(self.zeros) * self.constant
        den = _reflected_denominator(self.zeros)
        coeffs = _series_divide(num, den, radius)
        v = FourierVector.from_analytic(coeffs, radius)
        v.tail_mass = max(0.0, 1.0 - float(np.linalg.norm(v.coeffs) ** 2))
        v.truncated = v.tail_mass > 1e-15
        return v

    def as_rational(self) -> "RationalFunction":
        from .rational import RationalFunction

        num = _poly_from_roots(self.zeros) * self.constant
        den = _reflected_denominator(self.zeros)
        return RationalFunction(num, den)

    def divide(self, divisor: "BlaschkeProduct") -> "BlaschkeProduct":
        """Remove the divisor's zero multiset (must divide this product)."""
        remaining = list(self.zeros)
        for a in divisor.zeros:
            j = _closest_index(remaining, a)
            if j is None:
                raise PreconditionError("divisor zeros are not a sub-multiset")
            remaining.pop(j)
        return BlaschkeProduct(np.array(remaining, dtype=complex),
                               self.constant / divisor.constant)

    def to_json(self) -> dict:
        return {
            "zeros": [[float(a.real), float(a.imag)] for a in self.zeros],
            "constant": [float(self.constant.real), float(self.constant.imag)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BlaschkeProduct":
        # entries may be plain numbers or [re, im] pairs
        zeros = np.array([_complex_from_json(a) for a in data.get("zeros", [])])
        return cls(zeros, _complex_from_json(data.get("constant", 1.0)))


def _complex_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    return complex(value[0], value[1])


def blaschke(*zeros: complex, constant: complex = 1.0) -> BlaschkeProduct:
    """Convenience constructor from listed zeros."""
    return BlaschkeProduct(np.array(zeros, dtype=complex), constant)


def sigma_set(b: BlaschkeProduct) -> np.ndarray:
    """Zero multiset of the product (copy)."""
    return b.zeros.copy()


def inner_gcd(b1: BlaschkeProduct, b2: BlaschkeProduct,
              tol: float = CLUSTER_TOL) -> BlaschkeProduct:
    """Greatest common inner divisor by zero-multiset intersection.

    Zeros are matched greedily within the clustering tolerance; two
    distinct zeros of one factor within tolerance of a single zero of the
    other make the matching ambiguous and raise.
    """
    _check_unambiguous(b1.zeros, b2.zeros, tol)
    _check_unambiguous(b2.zeros, b1.zeros, tol)
    remaining = list(b2.zeros)
    common: list[complex] = []
    for a in b1.zeros:
        j = _closest_index(remaining, a, tol)
        if j is not None:
            common.append((a + remaining[j]) / 2.0)
            remaining.pop(j)
    return BlaschkeProduct(np.array(common, dtype=complex), 1.0)


def _check_unambiguous(left: np.ndarray, right: np.ndarray, tol: float) -> None:
    for w in right:
        close = [a for a in left if abs(a - w) <= tol]
        for i in range(len(close)):
            for j in range(i + 1, len(close)):
                if abs(close[i] - close[j]) > tol:
                    raise AmbiguousClusteringError(
                        "two distinct zeros lie within tolerance of one target zero"
                    )


def _closest_index(pool: list[complex], a: complex,
                   tol: float = CLUSTER_TOL) -> int | None:
    best, best_d = None, tol
    for j, w in enumerate(pool):
        d = abs(w - a)
        if d <= best_d:
            best, best_d = j, d
    return best


def _poly_from_roots(roots: np.ndarray) -> np.ndarray:
    """Monic polynomial with the given roots, coefficients by ascending power."""
    p = np.array([1.0 + 0j])
    for r in roots:
        p = np.convolve(p, np.array([-r, 1.0]))
    return p


def _reflected_denominator(zeros: np.ndarray) -> np.ndarray:
    """Ascending coefficients of prod(1 - conj(a) z) over the zeros."""
    p = np.array([1.0 + 0j])
    for a in zeros:
        p = np.convolve(p, np.array([1.0, -np.conj(a)]))
    return p


def _series_divide(num: np.ndarray, den: np.ndarray, radius: int) -> np.ndarray:
    """Power-series coefficients of num/den up to z**radius (den(0) != 0),
    all arrays by ascending power."""
    if abs(den[0]) < POLE_TOL:
        raise PoleProximityError("denominator vanishes at the origin")
    n = radius + 1
    inv = np.zeros(n, dtype=complex)
    inv[0] = 1.0 / den[0]
    for k in range(1, n):
        acc = 0.0 + 0.0j
        for j in range(1, min(k, len(den) - 1) + 1):
            acc += den[j] * inv[k - j]
        inv[k] = -acc / den[0]
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        acc = 0.0 + 0.0j
        for j in range(0, min(k, len(num) - 1) + 1):
            acc += num[j] * inv[k - j]
        out[k] = acc
    return out
