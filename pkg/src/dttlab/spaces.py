"""Finite-dimensional stand-ins for the Hardy-space geometry.

Every basis is a labelled family of window vectors stacked as columns of
an ambient coefficient matrix, so operator builders reduce to matrix
algebra: apply the defining formula to the domain columns, then read off
coefficients against the codomain columns.

Bases in play: the monomial window, the analytic and anti-analytic
halves, Takenaka-Malmquist bases of model spaces K_b for a finite
Blaschke product b, and the complement bases {z^-j} + {b z^k} of the
orthogonal complement of K_b.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .blaschke import BlaschkeProduct
from .errors import PreconditionError, WindowOverflowError, WindowTooSmallError
from .fourier import FourierVector

# Default margin between inner degree and window radius for projections.
PROJECTION_MARGIN = 16


@dataclass(eq=False)
class Basis:
    """Ordered, labelled family of window vectors (columns of `matrix`).

    `extents` records the largest |frequency| that a column is meant to
    occupy; interior compressions drop columns whose extent crowds the
    window edge.  `parts` captures direct-sum structure as (kind, size)
    pairs and ambient offsets.
    """

    kind: str
    window_radius: int
    labels: list[str]
    matrix: np.ndarray
    extents: np.ndarray
    params: dict = field(default_factory=dict)
    part_sizes: list[int] = field(default_factory=list)
    ambient_sizes: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.part_sizes:
            self.part_sizes = [len(self.labels)]
        if not self.ambient_sizes:
            self.ambient_sizes = [self.matrix.shape[0]]
        if self.matrix.shape[1] != len(self.labels):
            raise PreconditionError("one label per basis column required")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def ambient_dim(self) -> int:
        return self.matrix.shape[0]

    def coefficients(self, ambient: np.ndarray) -> np.ndarray:
        """Coefficients of an ambient vector against the (orthonormal) columns."""
        return self.matrix.conj().T @ ambient

    def embed(self, coeffs: np.ndarray) -> np.ndarray:
        """Ambient vector represented by basis coefficients."""
        return self.matrix @ coeffs

    def gram_defect(self) -> float:
        g = self.matrix.conj().T @ self.matrix
        return float(np.linalg.norm(g - np.eye(self.dim)))

    def interior_mask(self, margin: int) -> np.ndarray:
        return self.extents <= (self.window_radius - margin)

    def same_labels(self, other: "Basis") -> bool:
        return self.kind == other.kind and self.labels == other.labels

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "window_radius": self.window_radius,
            "labels": list(self.labels),
            "params": self.params,
        }


def _ambient_from_vectors(vectors: list[FourierVector], radius: int) -> np.ndarray:
    cols = [v.resize(radius).coeffs for v in vectors]
    return np.column_stack(cols) if cols else np.zeros((2 * radius + 1, 0), dtype=complex)


def full_l2_basis(radius: int) -> Basis:
    """Monomials z^k for k = -radius..radius."""
    n = 2 * radius + 1
    labels = [f"z^{k}" for k in range(-radius, radius + 1)]
    extents = np.abs(np.arange(-radius, radius + 1))
    return Basis("full_l2", radius, labels, np.eye(n, dtype=complex), extents)


def hardy_plus_basis(radius: int) -> Basis:
    """Monomials z^k for k = 0..radius, as window vectors."""
    mat = np.zeros((2 * radius + 1, radius + 1), dtype=complex)
    for k in range(radius + 1):
        mat[k + radius, k] = 1.0
    labels = [f"z^{k}" for k in range(radius + 1)]
    return Basis("hardy_plus", radius, labels, mat, np.arange(radius + 1))


def hardy_minus_basis(radius: int) -> Basis:
    """Monomials z^k for k = -radius..-1."""
    mat = np.zeros((2 * radius + 1, radius), dtype=complex)
    labels = []
    for i, k in enumerate(range(-radius, 0)):
        mat[k + radius, i] = 1.0
        labels.append(f"z^{k}")
    return Basis("hardy_minus", radius, labels, mat, np.abs(np.arange(-radius, 0)))


def takenaka_malmquist_vectors(b: BlaschkeProduct, radius: int) -> list[FourierVector]:
    """Orthonormal rational basis of K_b expanded on the window.

    e_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}.
    """
    vectors: list[FourierVector] = []
    partial = FourierVector.one(radius)
    for k, a in enumerate(b.zeros):
        cauchy = _cauchy_series(a, radius)
        ek = partial.multiply(cauchy, radius=radius) * np.sqrt(1.0 - abs(a) ** 2)
        vectors.append(ek)
        factor = BlaschkeProduct(np.array([a]), 1.0).series(radius)
        partial = partial.multiply(factor, radius=radius)
    return vectors


def _cauchy_series(a: complex, radius: int) -> FourierVector:
    powers = np.conj(a) ** np.arange(radius + 1)
    return FourierVector.from_analytic(powers, radius)


def model_space_basis(b: BlaschkeProduct, radius: int,
                      margin: int = PROJECTION_MARGIN) -> Basis:
    """Takenaka-Malmquist basis of K_b as a labelled Basis."""
    if radius < b.degree + margin:
        raise WindowTooSmallError(
            f"window radius {radius} < degree {b.degree} + margin {margin}"
        )
    vecs = takenaka_malmquist_vectors(b, radius)
    labels = [f"tm_{k}" for k in range(b.degree)]
    mat = _ambient_from_vectors(vecs, radius)
    extents = np.zeros(b.degree, dtype=int)  # geometric tails; never edge-bound
    return Basis("model_space", radius, labels, mat, extents,
                 params={"inner": b.to_json()})


def dual_model_basis(b: BlaschkeProduct, n_neg: int, m_top: int,
                     radius: int | None = None) -> Basis:
    """Basis {z^-1..z^-n_neg} + {b, b z, .., b z^m_top} of the complement of K_b.

    The window must hold deg(b) + m_top; otherwise the family is not
    representable and the call fails rather than silently truncating.
    """
    need = max(n_neg, b.degree + m_top)
    r = need + 2 if radius is None else radius
    if r < need:
        raise WindowOverflowError(
            f"window radius {r} cannot hold degree {need} basis vectors"
        )
    vectors: list[FourierVector] = []
    labels: list[str] = []
    extents: list[int] = []
    for j in range(1, n_neg + 1):
        vectors.append(FourierVector.monomial(-j, r))
        labels.append(f"z^{-j}")
        extents.append(j)
    series = b.series(r)
    for k in range(m_top + 1):
        vectors.append(series.shift(k, radius=r))
        labels.append(f"b*z^{k}")
        extents.append(b.degree + k)
    mat = _ambient_from_vectors(vectors, r)
    return Basis("dual_model", r, labels, mat, np.asarray(extents, dtype=int),
                 params={"inner": b.to_json(), "n_neg": n_neg, "m_top": m_top})


def direct_sum(*parts: Basis) -> Basis:
    """Stack bases as a block-diagonal family on the concatenated ambient."""
    labels = []
    part_sizes = []
    ambient_sizes = []
    extents = []
    radius = max(p.window_radius for p in parts)
    for i, p in enumerate(parts):
        labels.extend(f"[{i}]{lab}" for lab in p.labels)
        part_sizes.append(p.dim)
        ambient_sizes.append(p.ambient_dim)
        extents.append(p.extents)
    mat = scipy.linalg.block_diag(*[p.matrix for p in parts]).astype(complex)
    kind = "+".join(p.kind for p in parts)
    return Basis(kind, radius, labels, mat, np.concatenate(extents),
                 params={"parts": [p.to_json() for p in parts]},
                 part_sizes=part_sizes, ambient_sizes=ambient_sizes)


# -- projections and conjugation ------------------------------------------------


def projection_plus_matrix(radius: int) -> np.ndarray:
    """Diagonal 0/1 matrix keeping frequencies k >= 0."""
    d = np.zeros(2 * radius + 1)
    d[radius:] = 1.0
    return np.diag(d).astype(complex)


def projection_minus_matrix(radius: int) -> np.ndarray:
    return np.eye(2 * radius + 1, dtype=complex) - projection_plus_matrix(radius)


def multiplication_matrix(symbol: FourierVector, radius: int) -> np.ndarray:
    """Window section of pointwise multiplication by the symbol.

    Entry (j, k) is the symbol coefficient at lag j - k; lags beyond the
    symbol window count as zero, so callers supply symbols expanded to
    twice the target radius when geometric tails matter.
    """
    n = 2 * radius + 1
    lags = np.arange(-2 * radius, 2 * radius + 1)
    table = np.array([symbol.coeff(int(l)) for l in lags])
    col = table[2 * radius:]          # lags 0 .. 2N
    row = table[2 * radius::-1]       # lags 0, -1, .. -2N
    mat = scipy.linalg.toeplitz(col, row)
    assert mat.shape == (n, n)
    return mat


def model_projection_matrix(b: BlaschkeProduct, radius: int,
                            margin: int = PROJECTION_MARGIN):
    """Orthogonal projection onto K_b as a window matrix.

    Assembled as P+ - M_b P+ M_conj(b); with the symbol expanded to lag
    2*radius this reproduces the exact section of the projection.
    """
    from .operators import OperatorMatrix

    if radius < b.degree + margin:
        raise WindowTooSmallError(
            f"window radius {radius} < degree {b.degree} + margin {margin}"
        )
    series = b.series(2 * radius)
    mb = multiplication_matrix(series, radius)
    pp = projection_plus_matrix(radius)
    entries = pp - mb @ pp @ mb.conj().T
    basis = full_l2_basis(radius)
    return OperatorMatrix(basis, basis, entries)


def model_complement_projection_matrix(b: BlaschkeProduct, radius: int,
                                       margin: int = PROJECTION_MARGIN):
    """Projection onto the orthogonal complement of K_b (window section)."""
    p = model_projection_matrix(b, radius, margin)
    from .operators import OperatorMatrix

    entries = np.eye(2 * radius + 1, dtype=complex) - p.entries
    return OperatorMatrix(p.domain, p.codomain, entries)


@dataclass(eq=False)
class AntilinearOperator:
    """Antilinear map v -> matrix @ conj(v) on window coefficients."""

    matrix: np.ndarray
    window_radius: int

    def apply(self, v: FourierVector | np.ndarray) -> FourierVector:
        c = v.resize(self.window_radius).coeffs if isinstance(v, FourierVector) else v
        return FourierVector(self.matrix @ np.conj(c))

    def involution_defect(self, margin: int) -> float:
        """Norm of (C^2 - id) restricted to interior-supported monomials."""
        n = self.window_radius
        comp = self.matrix @ np.conj(self.matrix)
        mask = np.abs(np.arange(-n, n + 1)) <= n - margin
        diff = comp - np.eye(2 * n + 1)
        return float(np.linalg.norm(diff[:, mask], 2))


def conjugation_matrix(b: BlaschkeProduct, radius: int,
                       margin: int = PROJECTION_MARGIN) -> AntilinearOperator:
    """The antilinear involution f -> b * conj(z f) on the window.

    It fixes K_b and exchanges the two halves of its complement; window
    sections reproduce it exactly up to the series tail of b.
    """
    if radius < b.degree + margin:
        raise WindowTooSmallError(
            f"window radius {radius} < degree {b.degree} + margin {margin}"
        )
    series = b.series(2 * radius).shift(-1, radius=2 * radius)
    m = multiplication_matrix(series, radius)
    flip = np.fliplr(np.eye(2 * radius + 1, dtype=complex))
    return AntilinearOperator(m @ flip, radius)
