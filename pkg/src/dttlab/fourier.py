"""Coefficient windows and boundary grids on the unit circle.

A FourierVector stores the Fourier coefficients of a trigonometric
polynomial on the symmetric window [-N, N]; a BoundaryGrid stores
equispaced samples on the circle.  The two views are connected by FFTs,
with the convention

    samples[j] = sum_k c_k * exp(2*pi*i*j*k/M),   j = 0..M-1,

so analytic coefficients occupy the leading FFT bins and negative
frequencies wrap to the tail.  Inner products use the normalized
arclength measure, i.e. <f, g> = sum_k c_k * conj(d_k).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import NearZeroSampleError, PreconditionError, WindowOverflowError

# Relative mass below which dropped coefficients do not count as truncation.
SUPPORT_TOL = 1e-13

# Samples this close to zero make the winding number ill-defined.
WINDING_FLOOR = 1e-9


def next_pow2(n: int) -> int:
    """Smallest power of two >= max(n, 1)."""
    m = 1
    while m < n:
        m *= 2
    return m


def default_grid_size(radius: int) -> int:
    """Default boundary-grid size for a window of the given radius."""
    return next_pow2(max(4 * radius + 4, 8))


@dataclass(eq=False)
class FourierVector:
    """Trigonometric polynomial on the window [-N, N].

    coeffs[i] is the coefficient of z**(i - N) where N = (len - 1) // 2.
    `truncated` marks vectors known to be windowed versions of longer
    expansions; `tail_mass` estimates the squared L2 mass dropped.
    """

    coeffs: np.ndarray
    truncated: bool = False
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) % 2 != 1:
            raise PreconditionError("coefficient array must be 1-d with odd length")
        self.coeffs = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, radius: int) -> "FourierVector":
        return cls(np.zeros(2 * radius + 1, dtype=complex))

    @classmethod
    def monomial(cls, k: int, radius: int, scale: complex = 1.0) -> "FourierVector":
        if abs(k) > radius:
            raise WindowOverflowError(f"monomial degree {k} outside window radius {radius}")
        v = cls.zero(radius)
        v.coeffs[k + radius] = scale
        return v

    @classmethod
    def one(cls, radius: int) -> "FourierVector":
        return cls.monomial(0, radius)

    @classmethod
    def from_terms(cls, terms: Mapping[int, complex], radius: int) -> "FourierVector":
        v = cls.zero(radius)
        for k, c in terms.items():
            if abs(k) > radius:
                raise WindowOverflowError(f"term degree {k} outside window radius {radius}")
            v.coeffs[k + radius] = c
        return v

    @classmethod
    def from_analytic(cls, coeffs: Iterable[complex], radius: int) -> "FourierVector":
        """Vector with the given coefficients at z^0, z^1, ..."""
        c = np.asarray(list(coeffs), dtype=complex)
        if len(c) - 1 > radius:
            raise WindowOverflowError(
                f"analytic degree {len(c) - 1} outside window radius {radius}"
            )
        v = cls.zero(radius)
        v.coeffs[radius : radius + len(c)] = c
        return v

    # -- basic accessors ---------------------------------------------------

    @property
    def window_radius(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def coeff(self, k: int) -> complex:
        if abs(k) > self.window_radius:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.window_radius])

    def support_radius(self, tol: float = SUPPORT_TOL) -> int:
        """Largest |k| carrying more than tol of the max coefficient modulus."""
        mag = np.abs(self.coeffs)
        floor = tol * max(mag.max(), 1.0)
        idx = np.nonzero(mag > floor)[0]
        if len(idx) == 0:
            return 0
        n = self.window_radius
        return int(max(abs(idx[0] - n), abs(idx[-1] - n)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def inner(self, other: "FourierVector") -> complex:
        a, b = _common_window(self, other)
        return complex(np.vdot(b.coeffs, a.coeffs))  # vdot conjugates first arg

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "FourierVector") -> "FourierVector":
        a, b = _common_window(self, other)
        return FourierVector(a.coeffs + b.coeffs, a.truncated or b.truncated,
                             a.tail_mass + b.tail_mass)

    def __sub__(self, other: "FourierVector") -> "FourierVector":
        a, b = _common_window(self, other)
        return FourierVector(a.coeffs - b.coeffs, a.truncated or b.truncated,
                             a.tail_mass + b.tail_mass)

    def __mul__(self, scalar: complex) -> "FourierVector":
        return FourierVector(self.coeffs * scalar, self.truncated,
                             abs(scalar) ** 2 * self.tail_mass)

    __rmul__ = __mul__

    def __neg__(self) -> "FourierVector":
        return self * (-1.0)

    # -- circle operations ---------------------------------------------------

    def conjugate(self) -> "FourierVector":
        """Pointwise complex conjugate on the circle: c_k -> conj(c_{-k})."""
        return FourierVector(np.conj(self.coeffs[::-1]), self.truncated, self.tail_mass)

    def project_plus(self) -> "FourierVector":
        """Keep frequencies k >= 0."""
        out = self.coeffs.copy()
        out[: self.window_radius] = 0.0
        return FourierVector(out, self.truncated, self.tail_mass)

    def project_minus(self) -> "FourierVector":
        """Keep frequencies k <= -1."""
        out = self.coeffs.copy()
        out[self.window_radius:] = 0.0
        return FourierVector(out, self.truncated, self.tail_mass)

    def analytic_defect(self) -> float:
        """L2 mass at frequencies k <= -1 (zero for analytic vectors)."""
        return float(np.linalg.norm(self.coeffs[: self.window_radius]))

    def coanalytic_defect(self) -> float:
        """L2 mass at frequencies k >= 1 (zero for conjugate-analytic vectors)."""
        return float(np.linalg.norm(self.coeffs[self.window_radius + 1:]))

    def resize(self, radius: int, strict: bool = False) -> "FourierVector":
        """Pad or truncate to the given window radius."""
        n = self.window_radius
        if radius == n:
            return FourierVector(self.coeffs.copy(), self.truncated, self.tail_mass)
        if radius > n:
            pad = radius - n
            out = np.concatenate([np.zeros(pad), self.coeffs, np.zeros(pad)])
            return FourierVector(out, self.truncated, self.tail_mass)
        cut = n - radius
        dropped = float(np.linalg.norm(self.coeffs[:cut]) ** 2
                        + np.linalg.norm(self.coeffs[len(self.coeffs) - cut:]) ** 2)
        total = float(np.linalg.norm(self.coeffs) ** 2)
        significant = dropped > (SUPPORT_TOL ** 2) * max(total, 1.0)
        if strict and significant:
            raise WindowOverflowError(
                f"resize to radius {radius} drops squared mass {dropped:.3e}"
            )
        out = self.coeffs[cut: len(self.coeffs) - cut].copy()
        return FourierVector(out, self.truncated or significant,
                             self.tail_mass + dropped)

    def multiply(self, other: "FourierVector", radius: int | None = None,
                 strict: bool = False) -> "FourierVector":
        """Pointwise product on the circle (coefficient convolution).

        With radius=None the result window holds the full convolution and
        the product is exact.  A smaller radius truncates; strict mode
        raises instead of dropping significant coefficients.
        """
        full = np.convolve(self.coeffs, other.coeffs)
        prod = FourierVector(full, self.truncated or other.truncated,
                             self.tail_mass + other.tail_mass)
        if radius is None:
            return prod
        if strict:
            needed = prod.support_radius()
            if needed > radius:
                raise WindowOverflowError(
                    f"product support radius {needed} exceeds window radius {radius}"
                )
        return prod.resize(radius)

    def shift(self, k: int, radius: int | None = None) -> "FourierVector":
        """Multiply by z**k."""
        r = self.window_radius + abs(k) if radius is None else radius
        out = FourierVector.zero(r)
        n = self.window_radius
        for i, c in enumerate(self.coeffs):
            f = (i - n) + k
            if abs(f) <= r:
                out.coeffs[f + r] = c
        out.truncated = self.truncated
        out.tail_mass = self.tail_mass
        return out

    # -- boundary transport ----------------------------------------------------

    def boundary(self, grid_size: int | None = None) -> "BoundaryGrid":
        """Evaluate on an equispaced boundary grid via FFT."""
        n = self.window_radius
        m = default_grid_size(n) if grid_size is None else grid_size
        if m != next_pow2(m):
            raise PreconditionError(f"grid size {m} is not a power of two")
        if m < 2 * n + 2:
            raise WindowOverflowError(
                f"grid size {m} cannot resolve window radius {n}"
            )
        buf = np.zeros(m, dtype=complex)
        buf[: n + 1] = self.coeffs[n:]
        if n > 0:
            buf[m - n:] = self.coeffs[:n]
        return BoundaryGrid(np.fft.ifft(buf) * m)

    @classmethod
    def from_boundary(cls, grid: "BoundaryGrid", radius: int) -> "FourierVector":
        """Recover window coefficients from boundary samples via FFT.

        Frequencies outside the window alias; the dropped mass estimate is
        recorded on the result.
        """
        m = grid.size
        if m < 2 * radius + 2:
            raise WindowOverflowError(
                f"grid size {m} cannot resolve window radius {radius}"
            )
        buf = np.fft.fft(grid.samples) / m
        v = cls.zero(radius)
        v.coeffs[radius:] = buf[: radius + 1]
        if radius > 0:
            v.coeffs[:radius] = buf[m - radius:]
        total = float(np.sum(np.abs(buf) ** 2))
        kept = float(np.linalg.norm(v.coeffs) ** 2)
        v.tail_mass = max(total - kept, 0.0)
        v.truncated = v.tail_mass > (SUPPORT_TOL ** 2) * max(total, 1.0)
        return v

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "window_radius": self.window_radius,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourierVector":
        radius = int(data["window_radius"])
        coeffs = np.array([complex(re, im) for re, im in data["coeffs"]])
        if len(coeffs) != 2 * radius + 1:
            raise PreconditionError("coefficient count does not match window radius")
        return cls(coeffs)


def _common_window(a: FourierVector, b: FourierVector) -> tuple[FourierVector, FourierVector]:
    r = max(a.window_radius, b.window_radius)
    return a.resize(r), b.resize(r)


@dataclass(eq=False)
class BoundaryGrid:
    """Equispaced samples on the unit circle; samples[j] is at exp(2*pi*i*j/M)."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1 or len(s) < 2 or len(s) != next_pow2(len(s)):
            raise PreconditionError("sample count must be a power of two >= 2")
        self.samples = s

    @property
    def size(self) -> int:
        return len(self.samples)

    @property
    def points(self) -> np.ndarray:
        m = self.size
        return np.exp(2j * np.pi * np.arange(m) / m)

    @classmethod
    def sample(cls, fn: Callable[[np.ndarray], np.ndarray], grid_size: int) -> "BoundaryGrid":
        m = grid_size
        pts = np.exp(2j * np.pi * np.arange(m) / m)
        return cls(np.asarray(fn(pts), dtype=complex))

    def __mul__(self, other: "BoundaryGrid") -> "BoundaryGrid":
        if self.size != other.size:
            raise PreconditionError("grids must share the sample count")
        return BoundaryGrid(self.samples * other.samples)


def sup_norm(grid: BoundaryGrid) -> float:
    """Max modulus over the sampled boundary grid (requires >= 256 samples)."""
    if grid.size < 256:
        raise PreconditionError(f"sup-norm estimate needs >= 256 samples, got {grid.size}")
    return float(np.max(np.abs(grid.samples)))


def winding_number(grid: BoundaryGrid, floor: float = WINDING_FLOOR) -> int:
    """Winding of the sampled curve around 0 via principal-branch increments.

    Requires samples bounded away from zero; per-step increments must stay
    under pi, which holds for the zero-free rational data in scope once the
    grid has >= 2048 points.
    """
    s = grid.samples
    if float(np.min(np.abs(s))) < floor:
        raise NearZeroSampleError("curve passes within floor of zero; winding undefined")
    ratios = np.roll(s, -1) / s
    total = float(np.sum(np.angle(ratios)))
    w = total / (2 * np.pi)
    k = int(np.rint(w))
    if abs(w - k) > 1e-6:
        raise NearZeroSampleError(
            f"winding sum {w:.6f} not within 1e-6 of an integer; refine the grid"
        )
    return k
