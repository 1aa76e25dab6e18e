"""Kernel reports, solvability lifts, kernel isomorphisms, and spectra.

Two independent routes run through this module.  The SVD route works on
interior compressions: domain columns whose frequency extent crowds the
window edge are dropped before the decomposition, which removes the
spurious null vectors that plain finite sections produce at the edge.
The formula route (isomorphism maps, the rational solver, closed-form
kernels) works on window vectors directly and never sees edge artifacts.
Agreement between the two routes, measured by subspace angles and
forward residuals, is the package's main correctness instrument.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .blaschke import BlaschkeProduct, inner_gcd
from .corona import DEFAULT_DELTA, closure_grid, corona_check
from .errors import (
    CirclePoleError,
    HypothesisResidualError,
    HypothesisViolationError,
    NearCircleWarning,
    NotInKernelError,
    PreconditionError,
)
from .fourier import BoundaryGrid, FourierVector, next_pow2, winding_number
from .operators import (
    OperatorMatrix,
    SymbolLike,
    adjoint_paired_operator_matrix,
    as_symbol,
    boundary_values,
    dual_truncated_matrix,
    invert_symbol,
    paired_operator_matrix,
    paired_symbols,
)
from .rational import RationalFunction, factor_inner_outer
from .spaces import Basis, full_l2_basis, takenaka_malmquist_vectors

# Kernel cut: singular values below KERNEL_RTOL * sigma_max count as zero,
# and the cut must be separated by a factor GAP_FLOOR to be trustworthy.
KERNEL_RTOL = 1e-8
GAP_FLOOR = 1e3
IN_KERNEL_TOL = 1e-8

VALID_CONCLUSIONS = frozenset({
    "injective", "invertible", "only-injective", "only-surjective",
    "Fredholm", "not-Fredholm", "inconclusive",
})

_poly = np.polynomial.polynomial


# -- kernel reports ----------------------------------------------------------


@dataclass(eq=False)
class KernelReport:
    """Numerical nullspace of an operator section.

    `basis` holds coefficient columns against `domain` (labels aligned);
    `gap_ratio` measures the separation across the zero/nonzero cut and
    the report is ambiguous when it falls under GAP_FLOOR.
    """

    dimension: int
    basis: np.ndarray
    labels: list[str]
    singular_values: np.ndarray
    gap_ratio: float
    threshold: float
    ambiguous: bool
    domain: Basis | None = None
    meta: dict = field(default_factory=dict)

    def ambient_matrix(self) -> np.ndarray:
        if self.domain is None:
            return self.basis
        return self.domain.matrix @ self.basis

    def dominant_labels(self) -> list[str]:
        out = []
        for j in range(self.dimension):
            out.append(self.labels[int(np.argmax(np.abs(self.basis[:, j])))])
        return out

    def require_unambiguous(self) -> "KernelReport":
        if self.ambiguous:
            from .errors import AmbiguousGapError

            raise AmbiguousGapError(
                f"singular-value gap ratio {self.gap_ratio:.3e} below {GAP_FLOOR:.0e}; "
                "kernel dimension not certified"
            )
        return self

    def to_json(self) -> dict:
        return {
            "dimension": int(self.dimension),
            "labels": list(self.labels),
            "basis": [
                [[float(v.real), float(v.imag)] for v in self.basis[:, j]]
                for j in range(self.dimension)
            ],
            "dominant_labels": self.dominant_labels(),
            "singular_values": [float(s) for s in self.singular_values],
            "gap_ratio": float(self.gap_ratio),
            "threshold": float(self.threshold),
            "ambiguous": bool(self.ambiguous),
        }


def kernel(op: OperatorMatrix, threshold: float | None = None,
           margin: int = 0) -> KernelReport:
    """SVD nullspace of an operator section, interior-restricted by margin."""
    work = op
    if margin > 0:
        mask = op.domain.interior_mask(margin)
        if not mask.any():
            raise PreconditionError("interior margin removed every domain column")
        work = op.restrict_domain(mask)
    m, n = work.shape
    _, s, vh = np.linalg.svd(work.entries, full_matrices=True)
    svals = np.zeros(n)
    svals[: len(s)] = s
    smax = float(svals[0]) if n else 0.0
    thr = KERNEL_RTOL * smax if threshold is None else float(threshold)
    # <= so the zero matrix (thr = 0) reports a full kernel
    dim = int(np.count_nonzero(svals <= thr))
    if n == 0:
        gap = np.inf
    elif dim == 0:
        gap = float(svals[-1] / thr) if thr > 0 else np.inf
    elif dim == n:
        gap = np.inf
    else:
        low = svals[n - dim]
        gap = float(svals[n - dim - 1] / low) if low > 0 else np.inf
    basis = vh[n - dim:].conj().T if dim else np.zeros((n, 0), dtype=complex)
    return KernelReport(dim, basis, list(work.domain.labels), svals, gap, thr,
                        bool(gap < GAP_FLOOR), domain=work.domain)


def min_singular_interior(op: OperatorMatrix, margin: int = 0) -> float:
    """Smallest singular value of the interior-restricted section."""
    work = op
    if margin > 0:
        mask = op.domain.interior_mask(margin)
        if not mask.any():
            raise PreconditionError("interior margin removed every domain column")
        work = op.restrict_domain(mask)
    m, n = work.shape
    if n == 0:
        return np.inf
    if m < n:
        return 0.0
    s = np.linalg.svd(work.entries, compute_uv=False)
    return float(s[-1])


def subspace_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle (radians) between two column spans."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    if a.shape[1] == 0 and b.shape[1] == 0:
        return 0.0
    if a.shape[1] == 0 or b.shape[1] == 0:
        return float(np.pi / 2)
    ang = scipy.linalg.subspace_angles(a, b)
    return float(ang[0]) if len(ang) else 0.0


def stack_pair(pair_vec: tuple[FourierVector, FourierVector], radius: int) -> np.ndarray:
    """Concatenate a pair of window vectors into one ambient column."""
    u1, u2 = pair_vec
    return np.concatenate([u1.resize(radius).coeffs, u2.resize(radius).coeffs])


# -- direct applicators -------------------------------------------------------
#
# These evaluate the defining formulas on window vectors without building
# matrices, so they serve as oracles for the builders and as residual
# checks for predicted kernel vectors.


def model_project_vec(b: BlaschkeProduct, v: FourierVector) -> FourierVector:
    """Projection onto K_b applied to a window vector."""
    r = v.window_radius
    s = b.series(2 * r)
    plus = v.project_plus()
    inner_part = s.conjugate().multiply(plus, radius=2 * r).project_plus()
    return plus - s.multiply(inner_part, radius=r)


def complement_split(b: BlaschkeProduct, v: FourierVector,
                     ) -> tuple[FourierVector, FourierVector]:
    """Split v in the complement of K_b as v_minus + b * v_tilde."""
    r = v.window_radius
    s_bar = b.series(2 * r).conjugate()
    tilde = s_bar.multiply(v.project_plus(), radius=2 * r).project_plus().resize(r)
    return v.project_minus(), tilde


def apply_dual(symbol: SymbolLike, theta: BlaschkeProduct, alpha: BlaschkeProduct,
               f: FourierVector, project_domain: bool = True) -> FourierVector:
    """Dual truncated action: project off K_theta, multiply, project off K_alpha."""
    r = f.window_radius
    g = f - model_project_vec(theta, f) if project_domain else f
    u = as_symbol(symbol, 2 * r).multiply(g)
    return u - model_project_vec(alpha, u)


def apply_truncated(symbol: SymbolLike, theta: BlaschkeProduct,
                    alpha: BlaschkeProduct, f: FourierVector) -> FourierVector:
    """Truncated action: project to K_theta, multiply, project to K_alpha."""
    r = f.window_radius
    pf = model_project_vec(theta, f)
    u = as_symbol(symbol, 2 * r).multiply(pf)
    return model_project_vec(alpha, u)


def apply_paired(pair, vec: tuple[FourierVector, FourierVector],
                 ) -> tuple[FourierVector, FourierVector]:
    """Row action of A P+ + B P- on a pair of window vectors."""
    u = [v.project_plus() for v in vec]
    w = [v.project_minus() for v in vec]
    out = []
    for i in range(2):
        acc = None
        for j in range(2):
            term = (pair.a.entries[i][j].multiply(u[j])
                    + pair.b.entries[i][j].multiply(w[j]))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out[0], out[1]


def apply_adjoint_paired(pair, vec: tuple[FourierVector, FourierVector],
                         ) -> tuple[FourierVector, FourierVector]:
    """Row action of P+ A* + P- B* on a pair of window vectors."""
    out = []
    for i in range(2):
        sa = None
        sb = None
        for j in range(2):
            ta = pair.a.entries[j][i].conjugate().multiply(vec[j])
            tb = pair.b.entries[j][i].conjugate().multiply(vec[j])
            sa = ta if sa is None else sa + ta
            sb = tb if sb is None else sb + tb
        out.append(sa.project_plus() + sb.project_minus())
    return out[0], out[1]


# -- solvability correspondence ----------------------------------------------


def lift_solution(f: FourierVector, g: FourierVector, symbol: SymbolLike,
                  theta: BlaschkeProduct, alpha: BlaschkeProduct,
                  ) -> tuple[tuple[FourierVector, FourierVector],
                             tuple[FourierVector, FourierVector]]:
    """Map a dual-equation pair (f, g) to a paired-equation pair (Phi, Psi).

    Whenever the dual equation holds on interior-supported data, the
    returned pair satisfies the paired equation to the same order.
    """
    r = max(f.window_radius, g.window_radius)
    f = f.resize(r)
    g = g.resize(r)
    f_minus, f_tilde = complement_split(theta, f)
    phi1 = f_minus + f_tilde
    w = as_symbol(symbol, 2 * r).multiply(f)
    pw = model_project_vec(alpha, w)
    al_bar = alpha.series(2 * r).conjugate()
    phi2 = pw + al_bar.multiply(pw)
    g_minus, g_tilde = complement_split(alpha, g)
    psi2 = al_bar.multiply(g_minus) + g_tilde
    return (phi1, phi2), (g, psi2)


def project_solution(Phi: tuple[FourierVector, FourierVector],
                     Psi: tuple[FourierVector, FourierVector],
                     theta: BlaschkeProduct, alpha: BlaschkeProduct,
                     ) -> tuple[FourierVector, FourierVector]:
    """Map a paired-equation pair back to a dual-equation pair (f, g)."""
    phi1, _ = Phi
    psi1, psi2 = Psi
    r = max(phi1.window_radius, psi1.window_radius, psi2.window_radius)
    f = phi1.project_minus() + theta.series(2 * r).multiply(phi1.project_plus())
    g = psi1.project_minus() + alpha.series(2 * r).multiply(psi2.project_plus())
    return f, g


# -- kernel isomorphisms ------------------------------------------------------


def _require_in_kernel(residual: float, scale: float, tol: float, what: str) -> float:
    rel = residual / max(scale, 1e-300)
    if rel > tol:
        raise NotInKernelError(f"{what}: residual {rel:.3e} exceeds {tol:.1e}")
    return rel


def kernel_iso_N(f: FourierVector, symbol: SymbolLike, theta: BlaschkeProduct,
                 alpha: BlaschkeProduct, tol: float = IN_KERNEL_TOL,
                 ) -> tuple[FourierVector, FourierVector]:
    """Embed a dual kernel vector into the paired kernel.

    f = f_minus + theta f_tilde goes to (f_minus + f_tilde,
    symbol * (1 + conj(alpha)) * f).
    """
    resid = apply_dual(symbol, theta, alpha, f).norm()
    _require_in_kernel(resid, f.norm(), tol, "dual kernel membership")
    f_minus, f_tilde = complement_split(theta, f)
    r = f.window_radius
    al_bar = alpha.series(2 * r).conjugate()
    second = as_symbol(symbol, 2 * r).multiply(f + al_bar.multiply(f, radius=2 * r))
    return f_minus + f_tilde, second


def kernel_iso_Nstar(g: FourierVector, symbol: SymbolLike, theta: BlaschkeProduct,
                     alpha: BlaschkeProduct, tol: float = IN_KERNEL_TOL,
                     ) -> tuple[FourierVector, FourierVector]:
    """Embed an adjoint-dual kernel vector into the adjoint paired kernel.

    g = g_minus + alpha g_tilde goes to (g_minus, g_tilde).
    """
    r = g.window_radius
    conj_sym = as_symbol(symbol, r).conjugate()
    resid = apply_dual(conj_sym, alpha, theta, g).norm()
    _require_in_kernel(resid, g.norm(), tol, "adjoint dual kernel membership")
    return complement_split(alpha, g)


def kernel_iso_ND(f: FourierVector, symbol: SymbolLike, theta: BlaschkeProduct,
                  tol: float = IN_KERNEL_TOL) -> FourierVector:
    """Antilinear kernel map: conj(z f_tilde) + theta conj(z f_minus).

    Matches the conjugation attached to theta; isometric on kernels and
    an involution there.
    """
    resid = apply_dual(symbol, theta, theta, f).norm()
    _require_in_kernel(resid, f.norm(), tol, "dual kernel membership")
    f_minus, f_tilde = complement_split(theta, f)
    r = f.window_radius
    first = f_tilde.shift(1).conjugate().resize(r)
    second = theta.series(2 * r).multiply(f_minus.shift(1).conjugate(), radius=r)
    return first + second


def kernel_iso_NDA(f: FourierVector, symbol: SymbolLike, theta: BlaschkeProduct,
                   alpha: BlaschkeProduct, tol: float = IN_KERNEL_TOL,
                   ) -> FourierVector:
    """Multiply a dual kernel vector by the symbol, landing in K_alpha.

    Requires the symbol to be invertible in sup norm; the image belongs to
    the kernel of the truncated operator with the inverted symbol.
    """
    r = f.window_radius
    invert_symbol(symbol, 2 * r)
    resid = apply_dual(symbol, theta, alpha, f).norm()
    _require_in_kernel(resid, f.norm(), tol, "dual kernel membership")
    return as_symbol(symbol, 2 * r).multiply(f, radius=r)


# -- rational kernel solver ---------------------------------------------------


def rational_kernel_solve(ratio: RationalFunction, theta: BlaschkeProduct,
                          radius: int, grid_size: int | None = None,
                          cross_validate: bool = False, margin: int = 16,
                          ) -> KernelReport:
    """Kernel of the dual operator with rational symbol via polynomial ansatz.

    Kernel vectors have the form f = P1/P + theta * P2/P with polynomial
    degrees bounded by the symbol degrees; the membership conditions turn
    into linear constraints on windowed expansions, and the nullspace of
    the stacked constraint matrix parameterizes the kernel.
    """
    ratio.check_coprime()
    ratio.check_circle_pole_free()
    if ratio.num_degree > 0:
        for root in ratio.roots():
            if abs(abs(root) - 1.0) < 1e-8:
                raise CirclePoleError(
                    "numerator vanishes on the unit circle; the polynomial "
                    "ansatz is undefined there"
                )
    n1 = ratio.num_degree
    n2 = max(ratio.num_degree, ratio.den_degree)
    unknowns = n1 + n2
    domain = full_l2_basis(radius)
    if unknowns == 0:
        return KernelReport(0, np.zeros((domain.dim, 0), dtype=complex),
                            list(domain.labels), np.array([]), np.inf,
                            0.0, False, domain=domain,
                            meta={"unknowns": 0})
    m = grid_size or max(1024, next_pow2(8 * radius))
    pts = np.exp(2j * np.pi * np.arange(m) / m)
    pv = _poly.polyval(pts, ratio.num)
    qv = _poly.polyval(pts, ratio.den)
    thv = np.asarray(theta.eval(pts))

    def window(samples: np.ndarray) -> np.ndarray:
        ft = np.fft.fft(samples) / m
        return np.concatenate([ft[m - radius:], ft[: radius + 1]])

    deg = max(n1, n2)
    powers = pts[None, :] ** np.arange(deg)[:, None]
    over_p = [window(powers[j] / pv) for j in range(deg)]
    over_q = [window(powers[j] / qv) for j in range(n1)]
    th_over_q = [window(thv * powers[j] / qv) for j in range(n2)]
    thbar_over_q = [window(np.conj(thv) * powers[j] / qv) for j in range(n1)]
    plain_over_q = [window(powers[j] / qv) for j in range(n2)]

    pos = slice(radius, 2 * radius + 1)   # frequencies 0..radius
    neg = slice(0, radius)                # frequencies -radius..-1
    zeros1 = np.zeros((0,)) if n1 == 0 else None
    blocks = []
    # (i) P1/P analytic part vanishes
    b1 = np.zeros((radius + 1, unknowns), dtype=complex)
    for j in range(n1):
        b1[:, j] = over_p[j][pos]
    blocks.append(b1)
    # (ii) P2/P anti-analytic part vanishes
    b2 = np.zeros((radius, unknowns), dtype=complex)
    for j in range(n2):
        b2[:, n1 + j] = over_p[j][neg]
    blocks.append(b2)
    # (iii) P1/Q + theta P2/Q lies in K_theta: anti part vanishes, and the
    # conj(theta)-twist has no strictly positive frequencies
    b3 = np.zeros((radius, unknowns), dtype=complex)
    for j in range(n1):
        b3[:, j] = over_q[j][neg]
    for j in range(n2):
        b3[:, n1 + j] = th_over_q[j][neg]
    blocks.append(b3)
    b4 = np.zeros((radius + 1, unknowns), dtype=complex)
    for j in range(n1):
        b4[:, j] = thbar_over_q[j][pos]
    for j in range(n2):
        b4[:, n1 + j] = plain_over_q[j][pos]
    blocks.append(b4)
    constraint = np.vstack(blocks)
    _ = zeros1

    _, s, vh = np.linalg.svd(constraint, full_matrices=True)
    svals = np.zeros(unknowns)
    svals[: len(s)] = s
    smax = float(svals[0])
    thr = KERNEL_RTOL * max(smax, 1.0)
    dim = int(np.count_nonzero(svals < thr))
    if dim == 0:
        gap = float(svals[-1] / thr)
    elif dim == unknowns:
        gap = np.inf
    else:
        low = svals[unknowns - dim]
        gap = float(svals[unknowns - dim - 1] / low) if low > 0 else np.inf

    cols = []
    dropped = 0
    for idx in range(unknowns - dim, unknowns):
        x = vh[idx].conj()
        p1 = x[:n1]
        p2 = x[n1:]
        fs = np.zeros(m, dtype=complex)
        if n1:
            fs = fs + _poly.polyval(pts, p1) / pv
        if n2:
            fs = fs + thv * _poly.polyval(pts, p2) / pv
        w = window(fs)
        nw = float(np.linalg.norm(w))
        if nw < 1e-10:
            dropped += 1
            continue
        cols.append(w / nw)
    basis = np.column_stack(cols) if cols else np.zeros((domain.dim, 0), dtype=complex)
    if basis.shape[1] > 1:
        basis, _ = np.linalg.qr(basis)
    report = KernelReport(basis.shape[1], basis, list(domain.labels), svals,
                          gap, thr, bool(gap < GAP_FLOOR), domain=domain,
                          meta={"unknowns": unknowns, "dropped_null_vectors": dropped})
    if cross_validate:
        mat = dual_matrix(ratio, theta, theta, radius)
        rep2 = kernel(mat, margin=margin)
        report.meta["svd_dimension"] = rep2.dimension
        report.meta["cross_angle"] = subspace_angle(report.ambient_matrix(),
                                                    rep2.ambient_matrix())
    return report


# -- closed-form and scanned spectra ------------------------------------------


def dual_matrix(symbol: SymbolLike, theta: BlaschkeProduct, alpha: BlaschkeProduct,
                radius: int) -> OperatorMatrix:
    """Dual truncated section with the complement basis filling the window."""
    inner_deg = max(theta.degree, alpha.degree)
    return dual_truncated_matrix(symbol, theta, alpha, radius,
                                 radius - inner_deg, radius)


def dual_shift_kernel(theta: BlaschkeProduct, lam: complex, radius: int,
                      margin: int = 24) -> KernelReport:
    """Kernel of the dual operator with symbol z - lam.

    One-dimensional (a truncated geometric tail at negative frequencies)
    exactly when lam is inside the disk and theta vanishes at the origin;
    trivial otherwise, with the interior minimal singular value recorded.
    """
    a = abs(lam)
    if abs(a - 1.0) < 1e-12:
        raise PreconditionError(
            "parameter on the unit circle is essential; use spectrum_scan"
        )
    if 0.9 < a < 1.1:
        warnings.warn(
            "parameter close to the unit circle; finite sections separate "
            "point and essential behaviour poorly there",
            NearCircleWarning,
        )
    sym = FourierVector.from_terms({0: -complex(lam), 1: 1.0}, radius)
    mat = dual_matrix(sym, theta, theta, radius)
    rep = kernel(mat, margin=margin)
    rep.meta["min_interior_singular"] = float(rep.singular_values[-1])
    predicted = a < 1.0 and abs(complex(theta.eval(0.0))) < 1e-12
    rep.meta["predicted_dimension"] = 1 if predicted else 0
    if predicted:
        v = FourierVector.zero(radius)
        ks = np.arange(1, radius + 1)
        v.coeffs[radius - ks] = complex(lam) ** (ks - 1)
        v = v * (1.0 / v.norm())
        rep.meta["formula_residual"] = float(apply_dual(sym, theta, theta, v).norm())
        if rep.dimension == 1:
            rep.meta["formula_angle"] = subspace_angle(
                rep.ambient_matrix(), v.coeffs[:, None]
            )
    return rep


@dataclass(frozen=True)
class GridSpec:
    """Rectangular scan grid; points enumerate row-major (imaginary outer)."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    step: float

    def __post_init__(self) -> None:
        if self.step < 0.01:
            raise PreconditionError("grid step below 0.01 is not supported")
        if self.re_max < self.re_min or self.im_max < self.im_min:
            raise PreconditionError("grid rectangle is empty")

    def points(self) -> np.ndarray:
        nre = int(round((self.re_max - self.re_min) / self.step)) + 1
        nim = int(round((self.im_max - self.im_min) / self.step)) + 1
        res = self.re_min + self.step * np.arange(nre)
        ims = self.im_min + self.step * np.arange(nim)
        return (res[None, :] + 1j * ims[:, None]).ravel()

    def to_json(self) -> dict:
        return {
            "re_min": self.re_min, "re_max": self.re_max,
            "im_min": self.im_min, "im_max": self.im_max, "step": self.step,
        }


@dataclass(eq=False)
class SpectrumReport:
    """Scan outcome: essential curve samples plus per-point verdicts."""

    essential_samples: np.ndarray
    records: list[dict]
    grid: GridSpec
    meta: dict = field(default_factory=dict)

    @property
    def point_spectrum_hits(self) -> list[tuple[complex, int]]:
        return [(r["lam"], r["kernel_dim"]) for r in self.records
                if r["kernel_dim"] > 0]

    def verdicts(self) -> dict[complex, str]:
        return {r["lam"]: r["verdict"] for r in self.records}

    def summary(self) -> str:
        return (f"essential: {len(self.essential_samples)} samples; "
                f"point hits: {len(self.point_spectrum_hits)}")

    def to_json(self) -> dict:
        return {
            "grid": self.grid.to_json(),
            "essential_samples": [
                [float(v.real), float(v.imag)] for v in self.essential_samples
            ],
            "points": [
                {
                    "lam": [float(r["lam"].real), float(r["lam"].imag)],
                    "kernel_dim": int(r["kernel_dim"]),
                    "verdict": r["verdict"],
                    "essential_adjacent": bool(r.get("essential_adjacent", False)),
                }
                for r in self.records
            ],
            "meta": {k: v for k, v in self.meta.items()},
        }

    def csv_rows(self) -> list[tuple[float, float, int, str]]:
        return [
            (float(r["lam"].real), float(r["lam"].imag), int(r["kernel_dim"]),
             r["verdict"])
            for r in self.records
        ]


def spectrum_scan(symbol: SymbolLike, theta: BlaschkeProduct, grid: GridSpec,
                  radius: int, boundary_samples: int = 512, margin: int = 16,
                  ) -> SpectrumReport:
    """Classify grid points against the dual operator with the given symbol.

    Points within twice the grid step of the sampled essential curve are
    refused (finite sections cannot separate them); off-curve points get
    a kernel dimension through the rational solver when the symbol is
    rational, through interior SVD otherwise, and the verdict follows the
    kernel: trivial kernel means invertible at Fredholm points.
    """
    rational = isinstance(symbol, RationalFunction)
    mb = next_pow2(boundary_samples)
    ess = np.asarray(boundary_values(symbol, mb))
    base = None
    ident = None
    if not rational:
        sym_v = as_symbol(symbol, radius)
        base = dual_matrix(sym_v, theta, theta, radius)
        ident = dual_matrix(1.0, theta, theta, radius)
    records: list[dict] = []
    for lam in grid.points():
        lam = complex(lam)
        dist = float(np.min(np.abs(lam - ess)))
        if dist < 2 * grid.step:
            records.append({"lam": lam, "kernel_dim": -1,
                            "verdict": "non-Fredholm",
                            "essential_adjacent": True})
            continue
        if rational:
            try:
                rep = rational_kernel_solve(symbol.shifted(lam), theta, radius)
            except CirclePoleError:
                records.append({"lam": lam, "kernel_dim": -1,
                                "verdict": "non-Fredholm",
                                "essential_adjacent": True})
                continue
            dim = rep.dimension
            ambiguous = rep.ambiguous
        else:
            shifted = OperatorMatrix(
                base.domain, base.codomain,
                base.entries - lam * ident.entries,
            )
            rep = kernel(shifted, margin=margin)
            dim = rep.dimension
            ambiguous = rep.ambiguous
        verdict = "invertible" if dim == 0 else "Fredholm-noninvertible"
        records.append({"lam": lam, "kernel_dim": dim, "verdict": verdict,
                        "ambiguous": ambiguous})
    return SpectrumReport(ess, records, grid,
                          meta={"radius": radius, "margin": margin,
                                "rational_route": rational,
                                "boundary_samples": mb})


# -- corona-based predicates ---------------------------------------------------


@dataclass(eq=False)
class HypothesisCheck:
    name: str
    status: str
    value: float | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.value is not None:
            out["value"] = float(self.value)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(eq=False)
class CoronaInvertibilityVerdict:
    predicate_name: str
    hypothesis_report: list[HypothesisCheck]
    conclusion: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.conclusion not in VALID_CONCLUSIONS:
            raise PreconditionError(f"unknown conclusion {self.conclusion!r}")

    def all_hypotheses_pass(self) -> bool:
        return all(c.status == "pass" for c in self.hypothesis_report)

    def to_json(self) -> dict:
        return {
            "predicate_name": self.predicate_name,
            "hypothesis_report": [c.to_json() for c in self.hypothesis_report],
            "conclusion": self.conclusion,
            "meta": {k: v for k, v in self.meta.items()
                     if isinstance(v, (int, float, str, bool, list, dict))},
        }


def analytic_spectrum_predicate(symbol: SymbolLike, theta: BlaschkeProduct,
                                lam: complex, delta: float = DEFAULT_DELTA,
                                radius: int = 32) -> CoronaInvertibilityVerdict:
    """Invertibility of the dual operator with an analytic symbol at lam.

    Requires the symbol to be analytic with conj(theta) * symbol
    co-analytic on the window; then the operator minus lam is invertible
    exactly when lam stays delta away from the closed image of the disk.
    """
    phi_v = as_symbol(symbol, radius)
    checks = []
    scale = max(phi_v.norm(), 1.0)
    adef = phi_v.analytic_defect()
    ok_a = adef <= 1e-10 * scale
    checks.append(HypothesisCheck("symbol analytic on the window",
                                  "pass" if ok_a else "fail", adef))
    twist = theta.series(2 * radius).conjugate().multiply(phi_v)
    pos_mass = twist.coanalytic_defect()
    ok_b = pos_mass <= 1e-10 * scale
    checks.append(HypothesisCheck("conjugate-inner twist co-analytic",
                                  "pass" if ok_b else "fail", pos_mass))
    if not (ok_a and ok_b):
        raise HypothesisViolationError(
            "symbol support checks fail; the analytic-spectrum predicate "
            "does not apply"
        )
    grid = closure_grid()
    vals = np.abs(_poly.polyval(grid, phi_v.coeffs[radius:]) - complex(lam))
    inf_all = float(vals.min())
    witness = complex(grid[int(np.argmin(vals))])
    inf_boundary = float(vals[-256:].min())
    checks.append(HypothesisCheck("distance from the closed disk image",
                                  "pass" if inf_all >= delta else "fail", inf_all))
    if inf_all >= delta:
        conclusion = "invertible"
    elif inf_boundary < delta:
        conclusion = "not-Fredholm"
    else:
        conclusion = "Fredholm"
    return CoronaInvertibilityVerdict(
        "Thm8.4", checks, conclusion,
        meta={"infimum": inf_all, "boundary_infimum": inf_boundary,
              "witness": [witness.real, witness.imag], "delta": delta},
    )


def inverse_analytic_predicates(phi_inv: RationalFunction, theta: BlaschkeProduct,
                                radius: int = 48, margin: int = 16,
                                delta: float = DEFAULT_DELTA,
                                conjugate_symbol: bool = False,
                                ) -> CoronaInvertibilityVerdict:
    """Fredholmness, invertibility, and kernel for an analytically invertible symbol.

    The symbol's inverse factors as inner * outer; the inner gcd with theta
    drives everything: trivial gcd plus a corona pair means invertible,
    otherwise the kernel is the gcd model space shifted by inner * outer *
    (theta / gcd).  With conjugate_symbol the input describes the conjugate
    inverse and the predicted kernel is pushed through the conjugation.
    """
    fact = factor_inner_outer(phi_inv)
    beta, outer = fact.inner, fact.outer
    gamma = inner_gcd(theta, beta)
    checks = [
        HypothesisCheck("inverse symbol analytic and circle-zero-free", "pass"),
    ]
    cv = corona_check(theta, beta, delta=delta)
    checks.append(HypothesisCheck("corona pair (inner, inverse-inner)",
                                  "pass" if cv.is_pair else "fail", cv.infimum))
    quotient = theta.divide(gamma)
    predicted: list[FourierVector] = []
    if gamma.degree > 0:
        factor_vec = beta.series(2 * radius).multiply(
            outer.fourier(2 * radius), radius=2 * radius
        ).multiply(quotient.series(2 * radius), radius=2 * radius)
        for e in takenaka_malmquist_vectors(gamma, radius):
            v = factor_vec.multiply(e, radius=radius)
            if conjugate_symbol:
                v = theta.series(2 * radius).multiply(
                    v.shift(1).conjugate(), radius=radius
                )
            predicted.append(v)
    phi = phi_inv.inverse()
    sym: SymbolLike = phi
    if conjugate_symbol:
        sym = phi.fourier(radius).conjugate()
    mat = dual_matrix(sym, theta, theta, radius)
    rep = kernel(mat, margin=margin)
    if predicted:
        stack = np.column_stack([v.resize(radius).coeffs for v in predicted])
        angle = subspace_angle(stack, rep.ambient_matrix())
    else:
        angle = 0.0 if rep.dimension == 0 else float(np.pi / 2)
    dims_agree = rep.dimension == gamma.degree
    checks.append(HypothesisCheck(
        "kernel dimension matches inner gcd degree",
        "pass" if dims_agree else "fail", float(rep.dimension)))
    conclusion = "invertible" if (cv.is_pair and rep.dimension == 0) else "Fredholm"
    return CoronaInvertibilityVerdict(
        "Thm9.3", checks, conclusion,
        meta={
            "gcd_degree": gamma.degree,
            "predicted_dimension": gamma.degree,
            "svd_dimension": rep.dimension,
            "cross_angle": float(angle),
            "corona_infimum": cv.infimum,
            "kernel_report": rep,
            "predicted_basis": predicted,
        },
    )


@dataclass(eq=False)
class HData:
    """Corona data certifying injectivity of a paired operator."""

    h1_plus: FourierVector
    h2_plus: FourierVector
    h2_minus: FourierVector
    pattern: str = "custom"


def make_h_data(symbol: SymbolLike, theta: BlaschkeProduct,
                alpha: BlaschkeProduct, radius: int,
                delta: float = DEFAULT_DELTA) -> HData:
    """Automatic corona data for the monomial/Blaschke families under test.

    Tries the inner-forward pattern (h2+ = 1, h2- = 0, h1+ = symbol * theta)
    first, then the co-analytic pattern (h2+ = 0, h2- = 1, h1+ = symbol);
    returns the first whose support and corona checks pass.
    """
    phi_v = as_symbol(symbol, 2 * radius)
    th = theta.series(2 * radius)
    one = FourierVector.one(radius)
    zero = FourierVector.zero(radius)
    candidates = [
        HData(phi_v.multiply(th, radius=2 * radius), one, zero, "inner-forward"),
        HData(phi_v, zero, one, "co-analytic"),
    ]
    reasons = []
    for cand in candidates:
        ok, why = _h_data_valid(cand, alpha, delta)
        if ok:
            return cand
        reasons.append(f"{cand.pattern}: {why}")
    raise HypothesisViolationError(
        "no automatic corona data fits this triple: " + "; ".join(reasons)
    )


def _h_data_valid(cand: HData, alpha: BlaschkeProduct, delta: float,
                  ) -> tuple[bool, str]:
    scale = max(cand.h1_plus.norm(), 1.0)
    if cand.h1_plus.analytic_defect() > 1e-10 * scale:
        return False, "h1+ not analytic"
    r = cand.h1_plus.window_radius
    al_h1 = alpha.series(2 * r).conjugate().multiply(cand.h1_plus)
    if al_h1.coanalytic_defect() > 1e-10 * scale:
        return False, "conj(alpha) h1+ not co-analytic"
    try:
        cp_plus = corona_check(cand.h1_plus, cand.h2_plus, delta=delta)
        cp_minus = corona_check(al_h1, cand.h2_minus, half="exterior", delta=delta)
    except HypothesisViolationError as exc:
        return False, str(exc)
    if not cp_plus.is_pair:
        return False, f"interior corona infimum {cp_plus.infimum:.3e}"
    if not cp_minus.is_pair:
        return False, f"exterior corona infimum {cp_minus.infimum:.3e}"
    return True, ""


def paired_injectivity_predicate(symbol: SymbolLike, theta: BlaschkeProduct,
                                 alpha: BlaschkeProduct, h_data: HData,
                                 radius: int = 32, margin: int = 10,
                                 grid_size: int = 512,
                                 delta: float = DEFAULT_DELTA,
                                 ) -> CoronaInvertibilityVerdict:
    """Trichotomy verdict for the paired operator attached to a dual triple.

    Verifies the caller's corona data (it never solves corona problems):
    the linking identity symbol * (h2- + theta h2+) = h1+, the paired
    annihilation it implies, and both corona memberships.  The winding of
    the determinant ratio then decides invertible / only-injective /
    only-surjective, cross-validated against interior SVD dimensions.
    """
    m = grid_size
    pts = np.exp(2j * np.pi * np.arange(m) / m)
    phi_vals = boundary_values(symbol, m)
    h1v = h_data.h1_plus.boundary(m).samples
    h2pv = h_data.h2_plus.boundary(m).samples
    h2mv = h_data.h2_minus.boundary(m).samples
    thv = np.asarray(theta.eval(pts))
    alv = np.asarray(alpha.eval(pts))
    scale = max(float(np.max(np.abs(h1v))), 1.0)

    checks = []
    res_link = float(np.max(np.abs(phi_vals * (h2mv + thv * h2pv) - h1v)))
    if res_link > 1e-8 * scale:
        raise HypothesisResidualError(
            f"linking identity residual {res_link:.3e} exceeds 1e-8"
        )
    checks.append(HypothesisCheck("linking identity", "pass", res_link))

    h1mv = np.conj(alv) * h1v
    row1 = phi_vals * thv * h2pv - h1v + phi_vals * h2mv
    row2 = phi_vals * thv * np.conj(alv) * h2pv + np.conj(alv) * phi_vals * h2mv - h1mv
    res_pair = float(max(np.max(np.abs(row1)), np.max(np.abs(row2))))
    checks.append(HypothesisCheck("paired annihilation",
                                  "pass" if res_pair <= 1e-8 * scale else "fail",
                                  res_pair))

    r = h_data.h1_plus.window_radius
    al_h1 = alpha.series(2 * r).conjugate().multiply(h_data.h1_plus)
    cp_plus = corona_check(h_data.h1_plus, h_data.h2_plus, delta=delta)
    cp_minus = corona_check(al_h1, h_data.h2_minus, half="exterior", delta=delta)
    checks.append(HypothesisCheck("interior corona pair",
                                  "pass" if cp_plus.is_pair else "fail",
                                  cp_plus.infimum))
    checks.append(HypothesisCheck("exterior corona pair",
                                  "pass" if cp_minus.is_pair else "fail",
                                  cp_minus.infimum))

    k = theta.degree - alpha.degree
    k_grid = winding_number(BoundaryGrid(-(thv * np.conj(alv))))
    checks.append(HypothesisCheck("determinant winding agreement",
                                  "pass" if k == k_grid else "fail", float(k_grid)))

    pair = paired_symbols(symbol, theta, alpha, radius)
    ker_dim = kernel(paired_operator_matrix(pair, radius), margin=margin).dimension
    coker_dim = kernel(adjoint_paired_operator_matrix(pair, radius),
                       margin=margin).dimension
    expected = (0, 0) if k == 0 else ((0, k) if k > 0 else (-k, 0))
    svd_agrees = (ker_dim, coker_dim) == expected

    if all(c.status == "pass" for c in checks):
        conclusion = {True: "invertible"}[True] if k == 0 else (
            "only-injective" if k > 0 else "only-surjective"
        )
    else:
        conclusion = "inconclusive"
    return CoronaInvertibilityVerdict(
        "Thm8.2", checks, conclusion,
        meta={
            "winding": k,
            "winding_grid": k_grid,
            "svd_kernel": ker_dim,
            "svd_cokernel": coker_dim,
            "svd_agrees": svd_agrees,
            "h_pattern": h_data.pattern,
        },
    )
