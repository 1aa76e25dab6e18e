"""Window bases and projection matrices for model spaces and their complements."""
import numpy as np
import pytest

from dttlab.blaschke import blaschke
from dttlab.errors import PreconditionError, WindowTooSmallError
from dttlab.fourier import FourierVector
from dttlab.spaces import (
    conjugation_matrix,
    direct_sum,
    dual_model_basis,
    full_l2_basis,
    hardy_minus_basis,
    hardy_plus_basis,
    model_complement_projection_matrix,
    model_projection_matrix,
    model_space_basis,
    projection_minus_matrix,
    projection_plus_matrix,
    takenaka_malmquist_vectors,
)


def tv(terms, radius):
    return FourierVector.from_terms(terms, radius)


def test_full_l2_labels():
    basis = full_l2_basis(2)
    assert basis.labels == ["z^-2", "z^-1", "z^0", "z^1", "z^2"]
    assert basis.gram_defect() == 0.0


def test_hardy_halves_partition_window():
    plus = hardy_plus_basis(3)
    minus = hardy_minus_basis(3)
    assert plus.labels == ["z^0", "z^1", "z^2", "z^3"]
    assert minus.labels == ["z^-3", "z^-2", "z^-1"]
    assert plus.dim + minus.dim == full_l2_basis(3).dim


def test_projection_matrices_sum_to_identity():
    p = projection_plus_matrix(5)
    m = projection_minus_matrix(5)
    assert np.array_equal(p + m, np.eye(11))


def test_monomial_theta_projection_exact():
    P = model_projection_matrix(blaschke(0.0, 0.0), 18)
    assert np.linalg.norm(P.apply(FourierVector.monomial(3, 18).coeffs)) == 0.0
    one = FourierVector.one(18)
    assert np.linalg.norm(P.apply(one.coeffs) - one.coeffs) == 0.0
    assert np.linalg.norm(P.apply(FourierVector.monomial(-1, 18).coeffs)) == 0.0


def test_monomial_theta_projection_rank():
    P = model_projection_matrix(blaschke(0.0, 0.0), 18)
    sv = np.linalg.svd(P.entries, compute_uv=False)
    assert sv[1] > 0.999999
    assert sv[2] < 1e-12


def test_blaschke_theta_projection_laws():
    P = model_projection_matrix(blaschke(0.5, 0.0), 18)
    e = P.entries
    assert np.linalg.norm(e @ e - e, 2) < 1e-10
    assert np.linalg.norm(e - e.conj().T, 2) < 1e-12
    sv = np.linalg.svd(e, compute_uv=False)
    assert sv[1] / sv[2] > 1e6


def test_blaschke_theta_projection_fixes_cauchy_kernel():
    # K for theta = b_{1/2} z contains the reproducing kernel at 1/2,
    # whose Taylor series is geometric
    theta = blaschke(0.5, 0.0)
    P = model_projection_matrix(theta, 24)
    k = FourierVector.from_terms({j: 0.5**j for j in range(25)}, 24)
    assert np.linalg.norm(P.apply(k.coeffs) - k.coeffs) < 1e-7


def test_complement_projection_is_complementary():
    theta = blaschke(0.5, 0.0)
    P = model_projection_matrix(theta, 18)
    Q = model_complement_projection_matrix(theta, 18)
    assert np.linalg.norm(P.entries + Q.entries - np.eye(37), 2) < 1e-10


def test_projection_window_too_small():
    with pytest.raises(WindowTooSmallError):
        model_projection_matrix(blaschke(0.5, 0.0), 8)


def test_takenaka_malmquist_monomial_theta():
    tm = takenaka_malmquist_vectors(blaschke(0.0, 0.0), 20)
    assert len(tm) == 2
    assert tm[0].coeff(0) == pytest.approx(1.0)
    assert tm[1].coeff(1) == pytest.approx(1.0)
    assert tm[0].norm() == pytest.approx(1.0)


def test_takenaka_malmquist_geometric_column():
    # single zero at 1/2: normalized Cauchy kernel sqrt(3)/2 * (z/2)^k
    tm = takenaka_malmquist_vectors(blaschke(0.5), 24)
    assert len(tm) == 1
    scale = np.sqrt(0.75)
    for k in range(6):
        assert tm[0].coeff(k) == pytest.approx(scale * 0.5**k, abs=1e-12)


def test_takenaka_malmquist_orthonormal():
    tm = takenaka_malmquist_vectors(blaschke(0.5, -0.25j, 0.0), 30)
    for i, u in enumerate(tm):
        for j, v in enumerate(tm):
            want = 1.0 if i == j else 0.0
            assert u.inner(v) == pytest.approx(want, abs=1e-10)


def test_model_basis_projection_fixed_points():
    theta = blaschke(0.5, 0.0)
    basis = model_space_basis(theta, 20)
    P = model_projection_matrix(theta, 20)
    for col in range(basis.dim):
        v = basis.matrix[:, col]
        assert np.linalg.norm(P.apply(v) - v) < 1e-10


def test_dual_model_basis_labels_and_gram():
    basis = dual_model_basis(blaschke(0.0), 2, 1)
    assert basis.labels == ["z^-1", "z^-2", "b*z^0", "b*z^1"]
    assert basis.gram_defect() < 1e-12


def test_dual_model_basis_orthogonal_to_model_space():
    theta = blaschke(0.5, 0.0)
    basis = dual_model_basis(theta, 4, 3, radius=24)
    P = model_projection_matrix(theta, 24)
    for col in range(basis.dim):
        assert np.linalg.norm(P.apply(basis.matrix[:, col])) < 1e-7


def test_direct_sum_concatenates():
    a = hardy_minus_basis(3)
    b = hardy_plus_basis(3)
    s = direct_sum(a, b)
    assert s.dim == a.dim + b.dim
    # summand index is prefixed so labels stay unique
    assert s.labels == [f"[0]{l}" for l in a.labels] + [f"[1]{l}" for l in b.labels]


def test_basis_interior_mask():
    basis = full_l2_basis(4)
    mask = basis.interior_mask(2)
    assert mask.tolist() == [False, False, True, True, True, True, True, False, False]


def test_conjugation_monomial_theta():
    C = conjugation_matrix(blaschke(0.0), 20)
    img = C.apply(tv({-1: 1.0}, 20))
    assert img.coeff(1) == pytest.approx(1.0)
    assert img.norm() == pytest.approx(1.0)


def test_conjugation_inside_model_space():
    C = conjugation_matrix(blaschke(0.0, 0.0), 20)
    img = C.apply(FourierVector.one(20))
    assert img.coeff(1) == pytest.approx(1.0)


def test_conjugation_involution_exact_for_monomial():
    C = conjugation_matrix(blaschke(0.0, 0.0), 24)
    assert C.involution_defect(margin=16) == 0.0


def test_conjugation_involution_blaschke_margin_decay():
    # defect on the interior block decays like the series tail 2^-margin
    theta = blaschke(0.5, 0.0)
    C = conjugation_matrix(theta, 44, margin=36)
    assert C.involution_defect(margin=36) < 1e-10
    loose = conjugation_matrix(theta, 24)
    assert loose.involution_defect(margin=16) < 1e-4


def test_conjugation_is_antilinear():
    C = conjugation_matrix(blaschke(0.0, 0.0), 20)
    f = tv({-2: 1.0}, 20)
    scaled = C.apply(FourierVector(2j * f.coeffs))
    base = C.apply(f)
    assert np.allclose(scaled.coeffs, -2j * base.coeffs)


def test_conjugation_isometric_on_interior(rng):
    C = conjugation_matrix(blaschke(0.5, 0.0), 24)
    coeffs = rng.standard_normal(49) + 1j * rng.standard_normal(49)
    coeffs[:12] = 0.0
    coeffs[-12:] = 0.0
    v = FourierVector(coeffs)
    assert C.apply(v).norm() == pytest.approx(v.norm(), rel=1e-8)
