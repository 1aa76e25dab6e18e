"""Rational boundary symbols and their inner-outer structure.

Coefficients are stored by ascending power.  Roots come from the
companion-matrix eigenproblem behind numpy's polyroots.  Boundary
expansions go through FFT sampling, which converges geometrically as
long as poles keep away from the circle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .blaschke import (
    CLUSTER_TOL,
    BlaschkeProduct,
    _poly_from_roots,
    _reflected_denominator,
)
from .errors import (
    BoundaryZeroError,
    CirclePoleError,
    CoprimalityError,
    NonInvertibleSymbolError,
    PreconditionError,
)
from .fourier import BoundaryGrid, FourierVector, next_pow2

# Default boundary grid for expansions.
EXPANSION_GRID = 1024


@dataclass(eq=False)
class RationalFunction:
    """Quotient num/den with ascending coefficient arrays."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self) -> None:
        self.num = np.trim_zeros(np.atleast_1d(np.asarray(self.num, dtype=complex)), "b")
        self.den = np.trim_zeros(np.atleast_1d(np.asarray(self.den, dtype=complex)), "b")
        if len(self.num) == 0:
            self.num = np.zeros(1, dtype=complex)
        if len(self.den) == 0 or not np.any(self.den):
            raise PreconditionError("denominator must be nonzero")

    # -- structure ----------------------------------------------------------

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    def roots(self) -> np.ndarray:
        if self.num_degree == 0:
            return np.zeros(0, dtype=complex)
        return npoly.polyroots(self.num)

    def poles(self) -> np.ndarray:
        if self.den_degree == 0:
            return np.zeros(0, dtype=complex)
        return npoly.polyroots(self.den)

    def check_coprime(self, tol: float = CLUSTER_TOL) -> None:
        for r in self.roots():
            for p in self.poles():
                if abs(r - p) < tol:
                    raise CoprimalityError(
                        f"shared root/pole near {r:.6g} at clustering tolerance"
                    )

    def check_circle_pole_free(self, margin: float = 1e-8) -> None:
        for p in self.poles():
            if abs(abs(p) - 1.0) < margin:
                raise CirclePoleError(f"pole at |z| = {abs(p):.12g} sits on the circle")

    # -- evaluation -----------------------------------------------------------

    def __call__(self, z: np.ndarray | complex) -> np.ndarray | complex:
        return self.eval(z)

    def eval(self, z: np.ndarray | complex) -> np.ndarray | complex:
        pts = np.asarray(z, dtype=complex)
        num = npoly.polyval(pts, self.num)
        den = npoly.polyval(pts, self.den)
        if np.min(np.abs(den)) < 1e-14:
            raise CirclePoleError("evaluation point too close to a pole")
        out = num / den
        if np.isscalar(z):
            return complex(out)
        return out

    def boundary(self, grid_size: int = EXPANSION_GRID) -> BoundaryGrid:
        return BoundaryGrid.sample(self.eval, grid_size)

    def fourier(self, radius: int, grid_size: int | None = None) -> FourierVector:
        """Window expansion via boundary FFT (poles must avoid the circle)."""
        self.check_circle_pole_free()
        m = grid_size or max(EXPANSION_GRID, next_pow2(4 * radius + 4))
        return FourierVector.from_boundary(self.boundary(m), radius)

    def inverse(self) -> "RationalFunction":
        """Reciprocal symbol (numerator must be nonvanishing on the circle)."""
        for r in self.roots():
            if abs(abs(r) - 1.0) < 1e-8:
                raise NonInvertibleSymbolError("symbol vanishes on the circle")
        if not np.any(self.num):
            raise NonInvertibleSymbolError("zero symbol has no reciprocal")
        return RationalFunction(self.den.copy(), self.num.copy())

    def shifted(self, lam: complex) -> "RationalFunction":
        """The symbol minus a constant: (num - lam*den)/den."""
        n = max(len(self.num), len(self.den))
        num = np.zeros(n, dtype=complex)
        num[: len(self.num)] += self.num
        num[: len(self.den)] -= lam * self.den
        return RationalFunction(num, self.den.copy())

    # -- constructors / serialization ------------------------------------------

    @classmethod
    def from_poly(cls, coeffs: np.ndarray | list) -> "RationalFunction":
        return cls(np.asarray(coeffs, dtype=complex), np.array([1.0 + 0j]))

    @classmethod
    def monomial(cls, k: int) -> "RationalFunction":
        """z**k as a rational symbol (negative k puts the power below)."""
        if k >= 0:
            num = np.zeros(k + 1, dtype=complex)
            num[k] = 1.0
            return cls(num, np.array([1.0 + 0j]))
        den = np.zeros(-k + 1, dtype=complex)
        den[-k] = 1.0
        return cls(np.array([1.0 + 0j]), den)

    def to_json(self) -> dict:
        return {
            "num": [[float(c.real), float(c.imag)] for c in self.num],
            "den": [[float(c.real), float(c.imag)] for c in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(_coeffs_from_json(data["num"]), _coeffs_from_json(data["den"]))


def _coeffs_from_json(items: list) -> np.ndarray:
    out = []
    for c in items:
        if isinstance(c, (int, float)):
            out.append(complex(c))
        else:
            out.append(complex(c[0], c[1]))
    return np.asarray(out, dtype=complex)


@dataclass(eq=False)
class InnerOuterFactorization:
    """Split r = inner * outer with the inner part a finite Blaschke product."""

    inner: BlaschkeProduct
    outer: RationalFunction


def factor_inner_outer(r: RationalFunction, margin: float = 1e-8) -> InnerOuterFactorization:
    """Factor an analytic rational symbol into Blaschke part and outer part.

    Requires poles strictly outside the closed disk.  Numerator roots
    within `margin` of the circle are rejected: the factorization is not
    numerically stable there.
    """
    r.check_coprime()
    for p in r.poles():
        if abs(p) < 1.0 + margin:
            raise PreconditionError(
                "symbol must be analytic on the closed disk (pole inside or near the circle)"
            )
    roots = r.roots()
    inside = []
    outside = []
    for root in roots:
        if abs(abs(root) - 1.0) < margin:
            raise BoundaryZeroError(f"numerator root at |z| = {abs(root):.12g} on the circle")
        (inside if abs(root) < 1.0 else outside).append(root)
    inner = BlaschkeProduct(np.array(inside, dtype=complex), 1.0)
    # outer = r / inner; assembled from the factored pieces so no root
    # cancellation is ever performed numerically.
    lead = r.num[-1]
    num_out = _poly_from_roots(np.array(outside, dtype=complex)) * lead
    den_b = _reflected_denominator(inner.zeros)
    num_full = np.convolve(num_out, den_b)
    outer = RationalFunction(num_full, r.den.copy())
    return InnerOuterFactorization(inner, outer)
