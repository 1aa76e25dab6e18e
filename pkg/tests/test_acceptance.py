"""Acceptance criteria, one test per criterion, tolerances stated inline."""
import time

import numpy as np

from dttlab.analysis import (GridSpec, analytic_spectrum_predicate, apply_dual,
                             apply_paired, dual_matrix, dual_shift_kernel,
                             kernel, kernel_iso_N, kernel_iso_ND,
                             kernel_iso_NDA, lift_solution, make_h_data,
                             min_singular_interior, model_project_vec,
                             paired_injectivity_predicate, project_solution,
                             rational_kernel_solve, spectrum_scan, stack_pair,
                             subspace_angle)
from dttlab.blaschke import BlaschkeProduct, blaschke
from dttlab.cli import main
from dttlab.errors import CirclePoleError
from dttlab.fourier import FourierVector
from dttlab.operators import (block_toeplitz_matrix, extension_e_matrix,
                              extension_f_matrices, g_matrix,
                              paired_operator_matrix, paired_symbols,
                              truncated_toeplitz_matrix)
from dttlab.rational import RationalFunction
from dttlab.spaces import (conjugation_matrix, model_projection_matrix,
                           takenaka_malmquist_vectors)


def vec(terms: dict, radius: int) -> FourierVector:
    return FourierVector.from_terms(terms, radius)


def rand_complement(rng, b: BlaschkeProduct, radius: int,
                    support: int) -> FourierVector:
    v = FourierVector.zero(radius)
    lo, hi = radius - support, radius + support + 1
    v.coeffs[lo:hi] = rng.standard_normal(hi - lo) + 1j * rng.standard_normal(hi - lo)
    return v - model_project_vec(b, v)


def report(n: int, detail: str) -> None:
    print(f"criterion {n:02d}: PASS ({detail})")


def test_criterion_01_projection_laws():
    """Model projections are exact orthogonal projections of the right rank."""
    thetas = [blaschke(0.0, 0.0), blaschke(0.5), blaschke(0.5, 0.0),
              blaschke(0.5, -1 / 3, 0.0)]
    worst_idem = worst_sym = 0.0
    min_gap = float("inf")
    for th in thetas:
        n = th.degree + 16
        p = model_projection_matrix(th, n).entries
        worst_idem = max(worst_idem, float(np.linalg.norm(p @ p - p, 2)))
        worst_sym = max(worst_sym, float(np.linalg.norm(p - p.conj().T, 2)))
        sv = np.linalg.svd(p, compute_uv=False)
        assert int(np.sum(sv > 0.5)) == th.degree
        # gap between the last unit singular value and the first residual one
        trailing = sv[th.degree] if sv[th.degree] > 0 else 1e-300
        min_gap = min(min_gap, float(sv[th.degree - 1] / trailing))
    assert worst_idem <= 1e-10
    assert worst_sym <= 1e-10
    assert min_gap >= 1e6
    report(1, f"idem {worst_idem:.2e}, sym {worst_sym:.2e}, gap {min_gap:.1e}")


def test_criterion_02_extension_involution():
    """E squares to the identity on interior-supported vectors."""
    worst = 0.0
    for alpha in [blaschke(), blaschke(0.0), blaschke(0.5)]:
        e = extension_e_matrix(alpha, 64)
        worst = max(worst, e.compose(e).identity_defect(36))
    assert worst <= 1e-10
    report(2, f"E^2 defect {worst:.2e} at window 64")


def test_criterion_03_extension_inverse():
    """F and its inverse compose to the identity both ways on the interior."""
    cases = [
        (vec({1: 1.0}, 64), blaschke(0.0), blaschke(0.0)),
        (vec({0: 1.0, 1: 0.5}, 64), blaschke(0.0, 0.0), blaschke(0.0)),
        (blaschke(0.5), blaschke(0.0, 0.0), blaschke(0.0, 0.0)),
    ]
    worst = 0.0
    for phi, theta, alpha in cases:
        f_mat, f_inv = extension_f_matrices(phi, theta, alpha, 64)
        worst = max(worst,
                    f_mat.compose(f_inv).identity_defect(36),
                    f_inv.compose(f_mat).identity_defect(36))
    assert worst <= 1e-9
    report(3, f"two-sided defect {worst:.2e} over 3 symbol triples")


def test_criterion_04_solvability_round_trip():
    """Lifting dual solutions to paired ones and back is residual-free."""
    rng = np.random.default_rng(7)
    w = 48
    worst_lift = worst_rt = worst_back = 0.0
    for phi, theta, alpha in [
        (vec({1: 1.0}, w), blaschke(0.0), blaschke(0.0)),
        (vec({0: 1.0, 1: 0.5}, w), blaschke(0.0, 0.0), blaschke(0.0)),
    ]:
        pair = paired_symbols(phi, theta, alpha, w)
        for _ in range(10):
            f = rand_complement(rng, theta, w, w // 3)
            g = apply_dual(phi, theta, alpha, f).resize(w)
            scale = max(f.norm(), 1.0)
            Phi, Psi = lift_solution(f, g, phi, theta, alpha)
            out = apply_paired(pair, Phi)
            resid = max((out[0] - Psi[0].resize(out[0].window_radius)).norm(),
                        (out[1] - Psi[1].resize(out[1].window_radius)).norm())
            worst_lift = max(worst_lift, resid / scale)
            f2, g2 = project_solution(Phi, Psi, theta, alpha)
            rt = max((f - f2.resize(w)).norm(), (g - g2.resize(w)).norm())
            worst_rt = max(worst_rt, rt / scale)
            u1 = rand_complement(rng, blaschke(), w, w // 3)
            u2 = rand_complement(rng, blaschke(), w, w // 3)
            Psi2 = apply_paired(pair, (u1, u2))
            f3, g3 = project_solution((u1, u2), Psi2, theta, alpha)
            dres = (apply_dual(phi, theta, alpha, f3)
                    - g3.resize(2 * f3.window_radius)).norm()
            worst_back = max(worst_back, dres / max(u1.norm() + u2.norm(), 1.0))
    assert worst_lift <= 1e-8
    assert worst_rt <= 1e-10
    assert worst_back <= 1e-8
    report(4, f"20 lifts (resid {worst_lift:.2e}, round trip {worst_rt:.2e}), "
              f"20 projections (resid {worst_back:.2e})")


def test_criterion_05_kernel_chain():
    """Dual, paired, truncated, and block sections agree on kernel data."""
    cases = [
        ({-1: 1.0}, blaschke(0.0, 0.0), 48, 10),
        ({-1: 1.0}, blaschke(0.0), 48, 10),
        ({-2: 1.0}, blaschke(0.0, 0.5), 64, 14),
    ]
    dims = []
    worst = 0.0
    for phi_terms, theta, w, mg in cases:
        phi = vec(phi_terms, w)
        phi_inv = vec({-k: c for k, c in phi_terms.items()}, w)
        d_rep = kernel(dual_matrix(phi, theta, theta, w),
                       margin=mg).require_unambiguous()
        p_rep = kernel(paired_operator_matrix(paired_symbols(phi, theta, theta, w), w),
                       margin=mg).require_unambiguous()
        a_rep = kernel(truncated_toeplitz_matrix(phi_inv, theta, theta, w)
                       ).require_unambiguous()
        b_rep = kernel(block_toeplitz_matrix(g_matrix(phi, theta, theta, w), w),
                       margin=mg).require_unambiguous()
        assert min(r.gap_ratio for r in (d_rep, p_rep, a_rep, b_rep)) >= 1e3
        assert (d_rep.dimension == p_rep.dimension == a_rep.dimension
                == b_rep.dimension)
        dims.append(d_rep.dimension)
        cols_n, cols_a = [], []
        for j in range(d_rep.dimension):
            f = FourierVector(d_rep.ambient_matrix()[:, j].copy())
            cols_n.append(stack_pair(kernel_iso_N(f, phi, theta, theta), w))
            cols_a.append(kernel_iso_NDA(f, phi, theta, theta).resize(w).coeffs)
        worst = max(worst,
                    subspace_angle(np.column_stack(cols_n), p_rep.ambient_matrix()),
                    subspace_angle(np.column_stack(cols_a), a_rep.ambient_matrix()))
    assert worst <= 1e-6
    report(5, f"dims {dims} across 4 sections, iso angle {worst:.2e}")


def test_criterion_06_inner_symbol_kernel():
    """Kernel of the conjugate-inner dual operator is the shifted model space."""
    worst = 0.0
    for theta, w in [(blaschke(0.0, 0.0), 48), (blaschke(0.0, 0.0, 0.0), 48),
                     (blaschke(0.0, 0.5), 64)]:
        sym = theta.series(w).conjugate()
        rep = kernel(dual_matrix(sym, theta, theta, w),
                     margin=12).require_unambiguous()
        assert rep.dimension == theta.degree
        cols = [theta.series(2 * w).multiply(t.resize(2 * w), radius=w).coeffs
                for t in takenaka_malmquist_vectors(theta, w)]
        worst = max(worst, subspace_angle(np.column_stack(cols),
                                          rep.ambient_matrix()))
    assert worst <= 1e-6
    # membership: the inner function itself lies in the kernel iff it
    # vanishes at the origin
    zb = blaschke(0.0, 0.5)
    in_resid = apply_dual(zb.series(64).conjugate(), zb, zb, zb.series(64)).norm()
    b = blaschke(0.5)
    out_resid = apply_dual(b.series(48).conjugate(), b, b, b.series(48)).norm()
    assert in_resid <= 1e-8
    assert out_resid >= 0.4
    report(6, f"angle {worst:.2e}, membership residuals "
              f"{in_resid:.1e} (in) / {out_resid:.2f} (out)")


def test_criterion_07_shift_kernels_and_disk_scan():
    """Shifted-symbol kernels follow the geometric-tail formula on the disk."""
    lams = [0.0, 0.3 + 0.2j, 0.6]
    worst = 0.0
    for lam in lams:
        rep = dual_shift_kernel(blaschke(0.0, 0.0), lam, 128)
        assert rep.dimension == 1
        worst = max(worst, rep.meta["formula_residual"])
    assert worst <= 1e-6
    min_sv = min(dual_shift_kernel(blaschke(0.5), lam, 128)
                 .meta["min_interior_singular"] for lam in lams)
    assert min_sv >= 0.05

    sym = RationalFunction([0.0, 1.0], [1.0])
    grid = GridSpec(-1.5, 1.5, -1.5, 1.5, 0.1)
    rep_scan = spectrum_scan(sym, blaschke(0.0, 0.0, 0.0), grid, radius=24)
    hits = {lam for lam, _ in rep_scan.point_spectrum_hits}
    expected = {complex(p) for p in grid.points()
                if abs(p) < 1 and abs(abs(p) - 1.0) >= 2 * grid.step}
    assert hits == expected
    assert all(dim == 1 for _, dim in rep_scan.point_spectrum_hits)
    rep_free = spectrum_scan(sym, blaschke(0.5), grid, radius=24)
    assert not rep_free.point_spectrum_hits
    fine = spectrum_scan(sym, blaschke(0.0, 0.0, 0.0),
                         GridSpec(-1.5, 1.5, -1.5, 1.5, 0.05), radius=24)
    fine_map = {(round(r["lam"].real, 6), round(r["lam"].imag, 6)): r
                for r in fine.records}
    flips = 0
    for r in rep_scan.records:
        if r["kernel_dim"] < 0:
            continue
        fr = fine_map.get((round(r["lam"].real, 6), round(r["lam"].imag, 6)))
        if fr is not None and fr["kernel_dim"] >= 0 and fr["verdict"] != r["verdict"]:
            flips += 1
    assert flips == 0
    report(7, f"formula residual {worst:.2e}, min singular {min_sv:.2f}, "
              f"{len(hits)} disk hits, 0 verdict flips")


def test_criterion_08_invertibility_verdicts_agree():
    """Corona predicate and kernel route return the same verdicts."""
    theta = blaschke(0.0, 0.0, 0.0)
    sym = vec({1: 1.0}, 48)
    ratio = RationalFunction([0.0, 1.0], [1.0])
    verdicts = []
    for lam, want_inv in [(0.5, False), (1.0, False), (2.0, True)]:
        v = analytic_spectrum_predicate(sym, theta, lam)
        corona_inv = v.conclusion == "invertible"
        try:
            rep = rational_kernel_solve(ratio.shifted(lam), theta, 48)
            kernel_inv = rep.dimension == 0
            if kernel_inv:
                msv = min_singular_interior(
                    dual_matrix(vec({0: -lam, 1: 1.0}, 48), theta, theta, 48),
                    margin=10)
                kernel_inv = msv >= 0.3
        except CirclePoleError:
            kernel_inv = False
        assert corona_inv == kernel_inv == want_inv
        verdicts.append("invertible" if corona_inv else "not invertible")
    report(8, "verdicts at 0.5, 1, 2: " + ", ".join(verdicts))


def test_criterion_09_conjugation_symmetry():
    """Conjugation carries each nontrivial kernel onto the adjoint kernel."""
    cases = [(vec({-1: 1.0}, 48), blaschke(0.0, 0.0), 48, 10),
             (vec({-1: 1.0}, 48), blaschke(0.0), 48, 10),
             (vec({-2: 1.0}, 64), blaschke(0.0, 0.5), 64, 14)]
    for theta, w in [(blaschke(0.0, 0.0), 48), (blaschke(0.0, 0.0, 0.0), 48),
                     (blaschke(0.0, 0.5), 64)]:
        cases.append((theta.series(w).conjugate(), theta, w, 12))
    worst_angle = worst_iso = 0.0
    checked = 0
    for phi, theta, w, mg in cases:
        rep = kernel(dual_matrix(phi, theta, theta, w),
                     margin=mg).require_unambiguous()
        rep_star = kernel(dual_matrix(phi.conjugate(), theta, theta, w),
                          margin=mg).require_unambiguous()
        assert rep.dimension == rep_star.dimension
        assert rep.dimension > 0
        conj_op = conjugation_matrix(theta, w)
        cols = []
        for j in range(rep.dimension):
            f = FourierVector(rep.ambient_matrix()[:, j].copy())
            cols.append(conj_op.apply(f).coeffs)
            img = kernel_iso_ND(f, phi, theta)
            worst_iso = max(worst_iso, abs(img.norm() - f.norm()))
        worst_angle = max(worst_angle,
                          subspace_angle(np.column_stack(cols),
                                         rep_star.ambient_matrix()))
        checked += 1
    assert worst_angle <= 1e-6
    assert worst_iso <= 1e-10
    report(9, f"{checked} kernel cases, angle {worst_angle:.2e}, "
              f"isometry defect {worst_iso:.2e}")


def test_criterion_10_trichotomy():
    """Winding number decides injectivity and surjectivity of the pair."""
    expected = [
        (blaschke(0.0), blaschke(0.0), 0, "invertible", 0, 0),
        (blaschke(0.0, 0.0, 0.0), blaschke(0.0), 2, "only-injective", 0, 2),
        (blaschke(0.0), blaschke(0.0, 0.0, 0.0), -2, "only-surjective", 2, 0),
    ]
    windings = []
    for theta, alpha, k, conclusion, ker_dim, coker_dim in expected:
        hd = make_h_data(1.0, theta, alpha, 32)
        v = paired_injectivity_predicate(1.0, theta, alpha, hd, radius=32)
        assert v.conclusion == conclusion
        assert v.meta["winding"] == k
        assert v.meta["svd_agrees"]
        assert v.meta["svd_kernel"] == ker_dim
        assert v.meta["svd_cokernel"] == coker_dim
        windings.append(k)
    report(10, f"windings {windings} with matching section ranks")


def test_criterion_11_norm_bracket():
    """Section norm approximates the sup norm; energy split is exact."""
    theta = blaschke(0.0, 0.0)
    w = 256
    brackets = []
    for sym, sup in [(vec({1: 1.0}, w), 1.0),
                     (vec({0: 2.0, 1: 1.0}, w), 3.0),
                     (blaschke(0.5), 1.0)]:
        sig = float(np.linalg.svd(dual_matrix(sym, theta, theta, w).entries,
                                  compute_uv=False)[0])
        assert 0.98 * sup <= sig <= sup + 1e-8
        brackets.append(f"{sig:.6f}/{sup:g}")
    rng = np.random.default_rng(3)
    f = rand_complement(rng, theta, w, 40)
    sym = vec({0: 2.0, 1: 1.0}, w)
    u = sym.resize(2 * w).multiply(f.resize(2 * w), radius=2 * w)
    df = apply_dual(sym, theta, theta, f)
    pa = model_project_vec(theta, u)
    split = abs(u.norm() ** 2 - df.resize(2 * w).norm() ** 2 - pa.norm() ** 2)
    split /= u.norm() ** 2
    assert split <= 1e-10
    report(11, f"norms {', '.join(brackets)}, energy split {split:.2e}")


def test_criterion_12_determinism(tmp_path):
    """Verification reports are byte-identical across runs and fast."""
    out1, out2 = tmp_path / "a", tmp_path / "b"
    start = time.perf_counter()
    assert main(["verify", "--out", str(out1)]) == 0
    wall = time.perf_counter() - start
    assert main(["verify", "--out", str(out2)]) == 0
    b1 = (out1 / "verify.json").read_bytes()
    b2 = (out2 / "verify.json").read_bytes()
    assert b1 == b2
    assert wall <= 60.0
    report(12, f"byte-identical reports, wall {wall:.1f}s")
