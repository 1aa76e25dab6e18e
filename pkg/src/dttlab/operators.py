"""Finite-section operator builders.

Every operator appears as an OperatorMatrix: a labelled matrix between
two window bases, assembled by applying the defining formula (multiply,
project, embed) to the domain basis columns.  Covered families:

* Toeplitz and block Toeplitz compressions of multiplication,
* truncated Toeplitz operators between model spaces,
* dual truncated Toeplitz operators between model-space complements,
* paired operators A P+ + B P- on two copies of the window, driven by
  2x2 symbol matrices canonically attached to a dual symbol triple,
* the explicit extension matrices that implement the equivalence between
  dual truncated operators and paired operators, and the 2x2 symbol whose
  block Toeplitz compression sits at the far end of that equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import NonInvertibleSymbolError, PreconditionError, WindowTooSmallError
from .fourier import BoundaryGrid, FourierVector, next_pow2
from .rational import RationalFunction
from .spaces import (
    Basis,
    direct_sum,
    dual_model_basis,
    full_l2_basis,
    hardy_plus_basis,
    model_projection_matrix,
    model_space_basis,
    multiplication_matrix,
    projection_minus_matrix,
    projection_plus_matrix,
)

SymbolLike = FourierVector | BlaschkeProduct | RationalFunction | complex | float | int


def as_symbol(symbol: SymbolLike, radius: int) -> FourierVector:
    """Window expansion of any supported symbol type.

    FourierVectors wider than the window are truncated; narrower ones are
    zero-padded, which is exact for trig polynomials.  Blaschke products
    and rational symbols are re-expanded so their tails fill the window.
    """
    if isinstance(symbol, FourierVector):
        return symbol.resize(radius)
    if isinstance(symbol, BlaschkeProduct):
        return symbol.series(radius)
    if isinstance(symbol, RationalFunction):
        return symbol.fourier(radius)
    if isinstance(symbol, (int, float, complex)):
        return FourierVector.monomial(0, radius, scale=complex(symbol))
    raise PreconditionError(f"unsupported symbol type {type(symbol).__name__}")


def symbol_degree_budget(symbol: SymbolLike) -> int:
    """Exact degree for trig polynomials; a tail pad for rational symbols."""
    if isinstance(symbol, FourierVector):
        return symbol.support_radius()
    if isinstance(symbol, (int, float, complex)):
        return 0
    return 16


@dataclass(eq=False)
class OperatorMatrix:
    """Matrix of a linear map between two labelled bases."""

    domain: Basis
    codomain: Basis
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (self.codomain.dim, self.domain.dim):
            raise PreconditionError(
                f"entry shape {e.shape} does not match bases "
                f"({self.codomain.dim}, {self.domain.dim})"
            )
        self.entries = e

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        return self.entries @ coeffs

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self after other; inner bases must carry identical labels."""
        if not self.domain.same_labels(other.codomain):
            raise PreconditionError("inner bases do not match; composition undefined")
        return OperatorMatrix(other.domain, self.codomain, self.entries @ other.entries)

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.codomain, self.domain, self.entries.conj().T)

    def restrict_domain(self, mask: np.ndarray) -> "OperatorMatrix":
        idx = np.nonzero(mask)[0]
        sub = Basis(
            self.domain.kind + "|interior",
            self.domain.window_radius,
            [self.domain.labels[i] for i in idx],
            self.domain.matrix[:, idx],
            self.domain.extents[idx],
            params=dict(self.domain.params),
        )
        return OperatorMatrix(sub, self.codomain, self.entries[:, idx])

    def identity_defect(self, margin: int = 0) -> float:
        """Operator norm of (self - id) on interior-supported domain columns."""
        if self.shape[0] != self.shape[1]:
            raise PreconditionError("identity defect needs a square matrix")
        mask = self.domain.interior_mask(margin)
        diff = self.entries - np.eye(self.shape[0])
        return float(np.linalg.norm(diff[:, mask], 2))

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "entries": [
                [[float(v.real), float(v.imag)] for v in row] for row in self.entries
            ],
        }


# -- 2x2 symbol matrices ------------------------------------------------------


@dataclass(eq=False)
class SymbolMatrix:
    """2x2 matrix of window symbols acting on pairs of scalar functions."""

    entries: list[list[FourierVector]]

    def __post_init__(self) -> None:
        if len(self.entries) != 2 or any(len(row) != 2 for row in self.entries):
            raise PreconditionError("symbol matrix must be 2x2")

    def conj_transpose(self) -> "SymbolMatrix":
        e = self.entries
        return SymbolMatrix(
            [[e[0][0].conjugate(), e[1][0].conjugate()],
             [e[0][1].conjugate(), e[1][1].conjugate()]]
        )

    def det(self) -> FourierVector:
        e = self.entries
        return e[0][0].multiply(e[1][1]) - e[0][1].multiply(e[1][0])

    def boundary_apply(self, fns, grid_size: int) -> list[np.ndarray]:
        """Apply to a pair of boundary sample arrays."""
        f1, f2 = fns
        rows = []
        for i in range(2):
            a = self.entries[i][0].boundary(grid_size).samples
            b = self.entries[i][1].boundary(grid_size).samples
            rows.append(a * f1 + b * f2)
        return rows

    def to_json(self) -> dict:
        return {"entries": [[v.to_json() for v in row] for row in self.entries]}


@dataclass(eq=False)
class PairedSymbolPair:
    """Symbols (A, B) of a paired operator A P+ + B P- attached to a dual triple.

    The full-size pair has det A = phi*theta*conj(alpha) and det B = -phi;
    `reduced` marks the two-symbol variant available when alpha = theta.
    """

    a: SymbolMatrix
    b: SymbolMatrix
    reduced: bool = False
    meta: dict = field(default_factory=dict)

    def determinant_residuals(self, phi: SymbolLike, theta: BlaschkeProduct,
                              alpha: BlaschkeProduct, grid_size: int = 512) -> dict:
        """Sampled residuals of the closed-form determinant identities."""
        pts = BoundaryGrid.sample(lambda z: z, grid_size).points
        phi_vals = boundary_values(phi, grid_size)
        th = theta.eval(pts)
        al = alpha.eval(pts)
        det_a = _det_samples(self.a, grid_size)
        det_b = _det_samples(self.b, grid_size)
        if self.reduced:
            res_a = np.max(np.abs(det_a - phi_vals))
            res_b = np.max(np.abs(det_b + phi_vals))
        else:
            res_a = np.max(np.abs(det_a - phi_vals * th * np.conj(al)))
            res_b = np.max(np.abs(det_b + phi_vals))
        return {"det_a": float(res_a), "det_b": float(res_b)}


def _det_samples(sym: SymbolMatrix, grid_size: int) -> np.ndarray:
    e = sym.entries
    return (e[0][0].boundary(grid_size).samples * e[1][1].boundary(grid_size).samples
            - e[0][1].boundary(grid_size).samples * e[1][0].boundary(grid_size).samples)


def boundary_values(symbol: SymbolLike, grid_size: int) -> np.ndarray:
    pts = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
    if isinstance(symbol, (BlaschkeProduct, RationalFunction)):
        return np.asarray(symbol.eval(pts))
    if isinstance(symbol, (int, float, complex)):
        return np.full(grid_size, complex(symbol))
    return symbol.boundary(grid_size).samples


def paired_symbols(phi: SymbolLike, theta: BlaschkeProduct, alpha: BlaschkeProduct,
                   radius: int, reduced: bool = False) -> PairedSymbolPair:
    """Canonical paired-operator symbols attached to the triple (phi, theta, alpha).

    Full form:   A = [[phi theta, -1], [phi theta conj(alpha), 0]],
                 B = [[phi, 0], [conj(alpha) phi, -1]].
    Reduced form (alpha = theta only):
                 A = [[phi theta, -1], [phi, 0]],
                 B = [[phi, 0], [conj(theta) phi, -1]].
    """
    phi_v = as_symbol(phi, radius)
    th = theta.series(radius)
    minus_one = FourierVector.monomial(0, radius, scale=-1.0)
    zero = FourierVector.zero(radius)
    one_ = FourierVector.one(radius)
    phi_th = phi_v.multiply(th, radius=radius)
    if reduced:
        same = theta.degree == alpha.degree and (
            theta.degree == 0
            or np.allclose(np.sort_complex(theta.zeros), np.sort_complex(alpha.zeros))
        )
        if not same:
            raise PreconditionError("reduced paired symbols require alpha = theta")
        th_bar_phi = phi_v.multiply(th.conjugate(), radius=radius)
        a = SymbolMatrix([[phi_th, minus_one], [phi_v, zero]])
        b = SymbolMatrix([[phi_v, zero], [th_bar_phi, minus_one]])
        return PairedSymbolPair(a, b, reduced=True)
    al_bar = alpha.series(radius).conjugate()
    a = SymbolMatrix([[phi_th, minus_one],
                      [phi_th.multiply(al_bar, radius=radius), zero]])
    b = SymbolMatrix([[phi_v, zero],
                      [al_bar.multiply(phi_v, radius=radius), minus_one]])
    return PairedSymbolPair(a, b, reduced=False)


# -- concrete operator builders ---------------------------------------------------


def toeplitz_matrix(symbol: SymbolLike, radius: int) -> OperatorMatrix:
    """Compression of multiplication to the analytic half (degrees 0..radius)."""
    sym = as_symbol(symbol, 2 * radius + symbol_degree_budget(symbol))
    basis = hardy_plus_basis(radius)
    n = radius + 1
    entries = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            entries[j, k] = sym.coeff(j - k)
    return OperatorMatrix(basis, basis, entries)


def block_toeplitz_matrix(sym: SymbolMatrix, radius: int) -> OperatorMatrix:
    """Block compression of a 2x2 symbol matrix to two analytic halves."""
    basis = direct_sum(hardy_plus_basis(radius), hardy_plus_basis(radius))
    blocks = [[toeplitz_matrix(sym.entries[i][j], radius).entries for j in range(2)]
              for i in range(2)]
    entries = np.block(blocks)
    return OperatorMatrix(basis, basis, entries)


def truncated_toeplitz_matrix(phi: SymbolLike, theta: BlaschkeProduct,
                              alpha: BlaschkeProduct, radius: int) -> OperatorMatrix:
    """Compression P_alpha phi P_theta between model-space bases."""
    budget = theta.degree + alpha.degree + symbol_degree_budget(phi)
    if radius < budget + 16:
        raise WindowTooSmallError(
            f"window radius {radius} < degree budget {budget} + 16"
        )
    dom = model_space_basis(theta, radius)
    cod = model_space_basis(alpha, radius)
    mphi = multiplication_matrix(as_symbol(phi, 2 * radius), radius)
    p_alpha = model_projection_matrix(alpha, radius).entries
    cols = p_alpha @ (mphi @ dom.matrix)
    return OperatorMatrix(dom, cod, cod.coefficients(cols))


def dual_truncated_matrix(phi: SymbolLike, theta: BlaschkeProduct,
                          alpha: BlaschkeProduct, n_neg: int, m_top: int,
                          radius: int | None = None) -> OperatorMatrix:
    """Compression of f -> P-(phi f) + alpha P+(conj(alpha) phi f).

    Domain runs over the complement basis of K_theta, codomain over the
    complement basis of K_alpha, both with n_neg anti-analytic and
    m_top + 1 inner-shifted analytic members.
    """
    need = max(n_neg, max(theta.degree, alpha.degree) + m_top)
    r = need + symbol_degree_budget(phi) + 8 if radius is None else radius
    if r < need:
        raise WindowTooSmallError(f"window radius {r} below basis requirement {need}")
    dom = dual_model_basis(theta, n_neg, m_top, r)
    cod = dual_model_basis(alpha, n_neg, m_top, r)
    mphi = multiplication_matrix(as_symbol(phi, 2 * r), r)
    mal = multiplication_matrix(alpha.series(2 * r), r)
    pp = projection_plus_matrix(r)
    pm = projection_minus_matrix(r)
    u = mphi @ dom.matrix
    cols = pm @ u + mal @ (pp @ (mal.conj().T @ u))
    return OperatorMatrix(dom, cod, cod.coefficients(cols))


def paired_operator_matrix(pair: PairedSymbolPair, radius: int) -> OperatorMatrix:
    """Window section of A P+ + B P- on two copies of the full window."""
    basis = direct_sum(full_l2_basis(radius), full_l2_basis(radius))
    pp = projection_plus_matrix(radius)
    pm = projection_minus_matrix(radius)
    blocks = []
    for i in range(2):
        row = []
        for j in range(2):
            ma = multiplication_matrix(pair.a.entries[i][j], radius)
            mb = multiplication_matrix(pair.b.entries[i][j], radius)
            row.append(ma @ pp + mb @ pm)
        blocks.append(row)
    return OperatorMatrix(basis, basis, np.block(blocks))


def adjoint_paired_operator_matrix(pair: PairedSymbolPair, radius: int) -> OperatorMatrix:
    """Window section of P+ A* + P- B* (the adjoint of the paired section)."""
    basis = direct_sum(full_l2_basis(radius), full_l2_basis(radius))
    pp = projection_plus_matrix(radius)
    pm = projection_minus_matrix(radius)
    astar = pair.a.conj_transpose()
    bstar = pair.b.conj_transpose()
    blocks = []
    for i in range(2):
        row = []
        for j in range(2):
            ma = multiplication_matrix(astar.entries[i][j], radius)
            mb = multiplication_matrix(bstar.entries[i][j], radius)
            row.append(pp @ ma + pm @ mb)
        blocks.append(row)
    return OperatorMatrix(basis, basis, np.block(blocks))


def extension_e_matrix(alpha: BlaschkeProduct, radius: int) -> OperatorMatrix:
    """The self-inverse extension rotation attached to alpha.

    Blocks: [[alpha P- conj(alpha), alpha P+], [P+ conj(alpha), P-]].
    """
    basis = direct_sum(full_l2_basis(radius), full_l2_basis(radius))
    ma = multiplication_matrix(alpha.series(2 * radius), radius)
    pp = projection_plus_matrix(radius)
    pm = projection_minus_matrix(radius)
    mabar = ma.conj().T
    entries = np.block([
        [ma @ pm @ mabar, ma @ pp],
        [pp @ mabar, pm],
    ])
    return OperatorMatrix(basis, basis, entries)


def extension_f_matrices(phi: SymbolLike, theta: BlaschkeProduct,
                         alpha: BlaschkeProduct, radius: int,
                         ) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Explicit invertible factor F and its inverse for the dual equivalence.

    F maps (complement of K_theta) + K_alpha + full window into two full
    windows; the returned pair satisfies F Finv = Finv F = id on
    interior-supported vectors.  The complement basis is sized to cover
    the whole window so that the two-sided identity can hold.
    """
    n_neg = radius
    m_top = radius - theta.degree
    dual = dual_model_basis(theta, n_neg, m_top, radius)
    model = model_space_basis(alpha, radius)
    full = full_l2_basis(radius)
    dom = direct_sum(dual, model, full)
    cod = direct_sum(full_l2_basis(radius), full_l2_basis(radius))

    r = radius
    pp = projection_plus_matrix(r)
    pm = projection_minus_matrix(r)
    mphi = multiplication_matrix(as_symbol(phi, 2 * r), r)
    mth = multiplication_matrix(theta.series(2 * r), r)
    mal = multiplication_matrix(alpha.series(2 * r), r)
    mth_bar = mth.conj().T
    mal_bar = mal.conj().T
    p_alpha = model_projection_matrix(alpha, r).entries
    p_theta = model_projection_matrix(theta, r).entries
    q_theta = np.eye(2 * r + 1, dtype=complex) - p_theta

    # row one: (P- + P+ conj(theta)) on the complement part, zero elsewhere
    top_dual = (pm + pp @ mth_bar) @ dual.matrix
    # row two: (P+ phi + P- phi conj(alpha)) Q_theta on the complement part,
    #          -P_alpha on the model part, -(P- + alpha P+) on the window part
    phi_half = pp @ mphi + pm @ mphi @ mal_bar
    bottom_dual = phi_half @ (q_theta @ dual.matrix)
    bottom_model = -(p_alpha @ model.matrix)
    bottom_full = -(pm + mal @ pp)
    entries_f = np.block([
        [top_dual, np.zeros((2 * r + 1, model.dim)), np.zeros((2 * r + 1, 2 * r + 1))],
        [bottom_dual, bottom_model, bottom_full],
    ])
    f_mat = OperatorMatrix(dom, cod, entries_f)

    # inverse: rows target complement coefficients, model coefficients, window
    lift = pm + mth @ pp           # u -> u_- + theta u_+
    mphi_albar = multiplication_matrix(
        as_symbol(phi, 2 * r).multiply(alpha.series(2 * r).conjugate(), radius=2 * r), r
    )
    row_dual_u = dual.coefficients(lift)
    row_dual_v = np.zeros((dual.dim, 2 * r + 1), dtype=complex)
    row_model_u = model.coefficients(p_alpha @ mphi @ lift)
    row_model_v = model.coefficients(-p_alpha)
    row_full_u = mphi_albar @ lift
    row_full_v = -(pm + pp @ mal_bar)
    entries_finv = np.block([
        [row_dual_u, row_dual_v],
        [row_model_u, row_model_v],
        [row_full_u, row_full_v],
    ])
    f_inv = OperatorMatrix(cod, dom, entries_finv)
    return f_mat, f_inv


def g_matrix(phi: SymbolLike, theta: BlaschkeProduct, alpha: BlaschkeProduct,
             radius: int) -> SymbolMatrix:
    """2x2 symbol [[conj(alpha), 0], [1/phi, theta]] (phi invertible in sup norm).

    The block Toeplitz compression of this symbol is the far end of the
    equivalence chain for the dual operator with symbol phi.
    """
    inv = invert_symbol(phi, radius)
    return SymbolMatrix([
        [alpha.series(radius).conjugate(), FourierVector.zero(radius)],
        [inv, theta.series(radius)],
    ])


def invert_symbol(phi: SymbolLike, radius: int, grid_size: int | None = None,
                  floor: float = 1e-10) -> FourierVector:
    """Window expansion of 1/phi via boundary samples.

    Raises when |phi| dips below the floor on the sampling grid; the
    result carries the dropped tail mass estimate.
    """
    if isinstance(phi, RationalFunction):
        return phi.inverse().fourier(radius)
    m = grid_size or max(1024, next_pow2(4 * radius + 4))
    vals = boundary_values(phi, m)
    if float(np.min(np.abs(vals))) < floor:
        raise NonInvertibleSymbolError("symbol modulus vanishes on the sampling grid")
    return FourierVector.from_boundary(BoundaryGrid(1.0 / vals), radius)
