"""Finite sections: multiplication windows, compressions, extensions."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dttlab.analysis import apply_adjoint_paired, apply_paired, kernel, min_singular_interior
from dttlab.blaschke import blaschke
from dttlab.errors import NonInvertibleSymbolError, PreconditionError, WindowTooSmallError
from dttlab.fourier import FourierVector
from dttlab.operators import (
    OperatorMatrix,
    SymbolMatrix,
    adjoint_paired_operator_matrix,
    as_symbol,
    block_toeplitz_matrix,
    dual_truncated_matrix,
    extension_e_matrix,
    extension_f_matrices,
    g_matrix,
    invert_symbol,
    paired_operator_matrix,
    paired_symbols,
    symbol_degree_budget,
    toeplitz_matrix,
    truncated_toeplitz_matrix,
)

Z = FourierVector.monomial(1, 8)
ZBAR = FourierVector.monomial(-1, 8)
THETA_Z = blaschke(0.0)
THETA_Z2 = blaschke(0.0, 0.0)


def nonzero_map(op, col_label):
    j = op.domain.labels.index(col_label)
    col = op.entries[:, j]
    return {
        op.codomain.labels[i]: col[i] for i in range(len(col)) if abs(col[i]) > 1e-12
    }


def test_toeplitz_shift_is_subdiagonal():
    T = toeplitz_matrix(Z, 4)
    assert T.domain.labels == ["z^0", "z^1", "z^2", "z^3", "z^4"]
    assert np.array_equal(T.entries, np.diag(np.ones(4), -1))


def test_toeplitz_constant_is_identity():
    T = toeplitz_matrix(FourierVector.one(4), 4)
    assert np.array_equal(T.entries, np.eye(5))


def test_toeplitz_conjugate_symbol_is_adjoint():
    T = toeplitz_matrix(Z, 6)
    S = toeplitz_matrix(ZBAR, 6)
    assert np.array_equal(S.entries, T.adjoint().entries)


def test_truncated_shift_action():
    A = truncated_toeplitz_matrix(Z, THETA_Z2, THETA_Z2, 24)
    assert nonzero_map(A, "tm_0") == {"tm_1": pytest.approx(1.0)}
    assert nonzero_map(A, "tm_1") == {}


def test_truncated_constant_is_identity():
    A = truncated_toeplitz_matrix(FourierVector.one(4), THETA_Z2, THETA_Z2, 24)
    assert np.allclose(A.entries, np.eye(2), atol=1e-12)


def test_truncated_adjoint_swaps_symbol():
    A = truncated_toeplitz_matrix(Z, THETA_Z2, THETA_Z2, 24)
    B = truncated_toeplitz_matrix(ZBAR, THETA_Z2, THETA_Z2, 24)
    assert np.allclose(B.entries, A.adjoint().entries, atol=1e-12)


def test_truncated_kernel_for_shift():
    A = truncated_toeplitz_matrix(Z, THETA_Z2, THETA_Z2, 24)
    rep = kernel(A)
    assert rep.dimension == 1
    assert rep.dominant_labels() == ["tm_1"]


def test_truncated_window_precondition():
    with pytest.raises(WindowTooSmallError):
        truncated_toeplitz_matrix(Z, THETA_Z2, THETA_Z2, 12)


def test_dual_shift_action():
    D = dual_truncated_matrix(Z, THETA_Z, THETA_Z, 2, 1)
    assert nonzero_map(D, "z^-1") == {}
    assert nonzero_map(D, "z^-2") == {"z^-1": pytest.approx(1.0)}
    assert nonzero_map(D, "b*z^0") == {"b*z^1": pytest.approx(1.0)}


def test_dual_constant_is_identity():
    D = dual_truncated_matrix(FourierVector.one(4), THETA_Z, THETA_Z, 3, 3)
    assert np.allclose(D.entries, np.eye(D.shape[0]), atol=1e-12)


def test_dual_adjoint_swaps_symbol_and_spaces():
    phi = FourierVector.from_terms({-1: 0.5j, 0: 1.0, 2: -0.25}, 8)
    D = dual_truncated_matrix(phi, THETA_Z2, THETA_Z, 6, 4, radius=16)
    Dstar = dual_truncated_matrix(phi.conjugate(), THETA_Z, THETA_Z2, 6, 4, radius=16)
    assert np.array_equal(D.adjoint().entries, Dstar.entries)


def test_paired_symbol_entries():
    pair = paired_symbols(Z, THETA_Z, THETA_Z, 8)
    a, b = pair.a.entries, pair.b.entries
    assert nonzero_terms(a[0][0]) == {2: pytest.approx(1.0)}
    assert nonzero_terms(a[0][1]) == {0: pytest.approx(-1.0)}
    assert nonzero_terms(a[1][0]) == {1: pytest.approx(1.0)}
    assert nonzero_terms(a[1][1]) == {}
    assert nonzero_terms(b[0][0]) == {1: pytest.approx(1.0)}
    assert nonzero_terms(b[0][1]) == {}
    assert nonzero_terms(b[1][0]) == {0: pytest.approx(1.0)}
    assert nonzero_terms(b[1][1]) == {0: pytest.approx(-1.0)}


def nonzero_terms(v):
    r = v.window_radius
    return {k: v.coeff(k) for k in range(-r, r + 1) if abs(v.coeff(k)) > 1e-12}


def test_paired_determinant_residuals():
    pair = paired_symbols(Z, THETA_Z, THETA_Z, 8)
    resid = pair.determinant_residuals(Z, THETA_Z, THETA_Z)
    assert resid["det_a"] < 1e-12
    assert resid["det_b"] < 1e-12


def test_paired_annihilates_lifted_pair():
    pair = paired_symbols(Z, THETA_Z, THETA_Z, 8)
    out = apply_paired(
        pair,
        (
            FourierVector.from_terms({-1: 1.0}, 8),
            FourierVector.from_terms({0: 1.0, -1: 1.0}, 8),
        ),
    )
    assert out[0].norm() == 0.0
    assert out[1].norm() == 0.0


def test_paired_identity_symbol_well_conditioned():
    pair = paired_symbols(FourierVector.one(4), THETA_Z, THETA_Z, 64)
    M = paired_operator_matrix(pair, 64)
    assert min_singular_interior(M, margin=10) >= 0.5


def test_adjoint_paired_matrix_matches_matrix_adjoint_on_interior():
    pair = paired_symbols(Z, THETA_Z2, THETA_Z, 24)
    M = paired_operator_matrix(pair, 24)
    Mstar = adjoint_paired_operator_matrix(pair, 24)
    mask = np.concatenate([M.codomain.interior_mask(8)[: M.shape[0] // 2]] * 2)
    diff = (Mstar.entries - M.adjoint().entries)[:, mask]
    assert np.linalg.norm(diff, 2) < 1e-10


def test_extension_e_unit_alpha_is_exact_involution():
    E = extension_e_matrix(blaschke(), 16)
    assert E.compose(E).identity_defect(0) == 0.0


def test_extension_e_interior_involution():
    Ez = extension_e_matrix(THETA_Z, 24)
    assert Ez.compose(Ez).identity_defect(16) < 1e-12
    Eb = extension_e_matrix(blaschke(0.5), 48)
    assert Eb.compose(Eb).identity_defect(36) < 1e-10


def test_extension_f_two_sided_inverse():
    F, Finv = extension_f_matrices(Z, THETA_Z, THETA_Z, 32)
    assert F.compose(Finv).identity_defect(20) < 1e-12
    assert Finv.compose(F).identity_defect(20) < 1e-12


def test_extension_f_first_row_strips_theta():
    # phi = 1: the first output component of F rewrites f_- + theta*g
    # as f_- + g, checked on dual basis columns
    F, _ = extension_f_matrices(FourierVector.one(4), THETA_Z, THETA_Z, 24)
    j = F.domain.labels.index("[0]z^-1")
    col = F.entries[:, j]
    i = F.codomain.labels.index("[0]z^-1")
    assert col[i] == pytest.approx(1.0)
    j2 = F.domain.labels.index("[0]b*z^3")
    col2 = F.entries[:, j2]
    i2 = F.codomain.labels.index("[0]z^3")
    assert col2[i2] == pytest.approx(1.0)


def test_g_matrix_unit_symbol():
    G = g_matrix(FourierVector.one(8), THETA_Z, THETA_Z, 8)
    assert nonzero_terms(G.entries[0][0]) == {-1: pytest.approx(1.0)}
    assert nonzero_terms(G.entries[0][1]) == {}
    assert nonzero_terms(G.entries[1][0]) == {0: pytest.approx(1.0)}
    assert nonzero_terms(G.entries[1][1]) == {1: pytest.approx(1.0)}


def test_g_matrix_scales_inverse():
    G = g_matrix(FourierVector.from_terms({0: 2.0}, 8), THETA_Z, THETA_Z, 8)
    assert nonzero_terms(G.entries[1][0]) == {0: pytest.approx(0.5)}


def test_g_matrix_determinant_identity():
    # det G = conj(alpha) * theta on the boundary
    theta = THETA_Z2
    alpha = THETA_Z
    G = g_matrix(FourierVector.from_terms({0: 1.0, 1: 0.5}, 8), theta, alpha, 16)
    det = G.det()
    w = np.exp(2j * np.pi * np.arange(64) / 64)
    want = np.conj(alpha.eval(w)) * theta.eval(w)
    got = sum(det.coeff(k) * w**k for k in range(-16, 17))
    assert np.allclose(got, want, atol=1e-10)


def test_block_toeplitz_kernel_dimension():
    theta = THETA_Z2
    sym = SymbolMatrix(
        [
            [theta.series(32).conjugate(), FourierVector.zero(1)],
            [FourierVector.monomial(1, 4), theta.series(32)],
        ]
    )
    rep = kernel(block_toeplitz_matrix(sym, 32), margin=12)
    assert rep.dimension == 1


def test_block_toeplitz_identity():
    sym = SymbolMatrix(
        [
            [FourierVector.one(1), FourierVector.zero(1)],
            [FourierVector.zero(1), FourierVector.one(1)],
        ]
    )
    B = block_toeplitz_matrix(sym, 8)
    assert np.array_equal(B.entries, np.eye(B.shape[0]))


def test_symbol_matrix_conj_transpose():
    sym = SymbolMatrix(
        [
            [FourierVector.from_terms({1: 2j}, 2), FourierVector.zero(1)],
            [FourierVector.one(1), FourierVector.zero(1)],
        ]
    )
    ct = sym.conj_transpose()
    assert nonzero_terms(ct.entries[0][0]) == {-1: pytest.approx(-2j)}
    assert nonzero_terms(ct.entries[0][1]) == {0: pytest.approx(1.0)}


def test_invert_symbol_round_trip():
    phi = FourierVector.from_terms({0: 2.0, 1: 0.5}, 4)
    inv = invert_symbol(phi, 32)
    prod = phi.multiply(inv)
    assert abs(prod.coeff(0) - 1.0) < 1e-10
    assert prod.project_plus().coeffs[prod.window_radius + 1 :].max() < 1e-10


def test_invert_symbol_rejects_circle_zero():
    phi = FourierVector.from_terms({0: 1.0, 1: -1.0}, 4)
    with pytest.raises(NonInvertibleSymbolError):
        invert_symbol(phi, 32)


def test_symbol_degree_budget():
    assert symbol_degree_budget(FourierVector.from_terms({-2: 1.0, 1: 1.0}, 8)) == 2
    assert symbol_degree_budget(2.0) == 0
    assert symbol_degree_budget(blaschke(0.5)) == 16


def test_operator_matrix_shape_guard():
    from dttlab.spaces import full_l2_basis

    with pytest.raises(PreconditionError):
        OperatorMatrix(full_l2_basis(2), full_l2_basis(2), np.zeros((3, 5)))


def test_compose_label_mismatch():
    A = truncated_toeplitz_matrix(Z, THETA_Z2, THETA_Z2, 24)
    D = dual_truncated_matrix(Z, THETA_Z, THETA_Z, 2, 1)
    with pytest.raises(PreconditionError):
        A.compose(D)


small_coeffs = st.lists(
    st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    min_size=5,
    max_size=5,
)


@settings(max_examples=25, deadline=None)
@given(small_coeffs)
def test_dual_adjoint_property(coeffs):
    # adjoint of the compression equals the compression of the conjugate
    # symbol with the two inner functions swapped
    phi = FourierVector(np.array(coeffs, dtype=complex))
    D = dual_truncated_matrix(phi, THETA_Z2, THETA_Z, 5, 4, radius=12)
    S = dual_truncated_matrix(phi.conjugate(), THETA_Z, THETA_Z2, 5, 4, radius=12)
    assert np.allclose(D.adjoint().entries, S.entries, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(small_coeffs)
def test_toeplitz_section_is_toeplitz(coeffs):
    phi = FourierVector(np.array(coeffs, dtype=complex))
    T = toeplitz_matrix(phi, 6).entries
    for d in range(-6, 7):
        diag = np.diagonal(T, offset=d)
        assert np.allclose(diag, diag[0] if diag.size else 0.0)
