import numpy as np
import pytest

from orthopencil import (
    MatrixPolynomial,
    ScalarPoly,
    Spectrum,
    SingularMatrixPolynomialError,
    builtin_basis,
    compare_spectra,
    det_poly,
    poly_roots,
    reference_spectrum,
)
from orthopencil.oracle import trim_poly
from conftest import random_problem


def test_det_of_constant_identity():
    P = MatrixPolynomial((np.eye(3),), builtin_basis("chebyshev1"))
    det = det_poly(P)
    assert det.degree == 0 and det.coeffs[0] == pytest.approx(1.0)


def test_det_scalar_chebyshev_t2():
    P = MatrixPolynomial(
        (np.zeros((1, 1)), np.zeros((1, 1)), np.ones((1, 1))), builtin_basis("chebyshev1")
    )
    det = det_poly(P)
    assert np.allclose(det.coeffs, [-1.0, 0.0, 2.0])


def test_det_diagonal_product():
    # diag(lam - 1, lam - 2) has determinant lam^2 - 3 lam + 2
    b = builtin_basis("monomial")
    P = MatrixPolynomial(
        (np.diag([-1.0, -2.0]), np.eye(2)), b
    )
    det = det_poly(P)
    assert np.allclose(det.coeffs, [2.0, -3.0, 1.0])


def test_poly_roots_cases():
    assert np.allclose(sorted(poly_roots(ScalarPoly([2.0, -3.0, 1.0])).real), [1.0, 2.0])
    r = sorted(poly_roots(ScalarPoly([-1.0, 0.0, 2.0])).real)
    assert np.allclose(r, [-1 / np.sqrt(2), 1 / np.sqrt(2)])
    ri = poly_roots(ScalarPoly([1.0, 0.0, 1.0]))
    assert np.allclose(sorted(ri.imag), [-1.0, 1.0])
    with pytest.raises(ValueError):
        poly_roots(ScalarPoly([3.0]))


def test_reference_spectrum_counts(rng):
    b = builtin_basis("monomial")
    A = rng.uniform(-1, 1, (2, 2)) + 2 * np.eye(2)
    B = rng.uniform(-1, 1, (2, 2))
    C = rng.uniform(-1, 1, (2, 2))
    P = MatrixPolynomial((C, B, A), b)
    spec = reference_spectrum(P)
    assert spec.finite.size == 4 and spec.infinite_count == 0

    A2 = np.diag([1.0, 0.0])
    P2 = MatrixPolynomial((C, B, A2), b)
    spec2 = reference_spectrum(P2)
    # det has degree 3 when the (2,2) entry of B is nonzero
    assert B[1, 1] != 0.0
    assert spec2.finite.size == 3 and spec2.infinite_count == 1


def test_reference_spectrum_scalar_t2():
    P = MatrixPolynomial(
        (np.zeros((1, 1)), np.zeros((1, 1)), np.ones((1, 1))), builtin_basis("chebyshev1")
    )
    spec = reference_spectrum(P)
    assert spec.infinite_count == 0
    assert np.allclose(sorted(spec.finite.real), [-1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_singular_polynomial_verdict(rng):
    coeffs = [rng.uniform(-1, 1, (2, 2)) for _ in range(3)]
    for c in coeffs:
        c[:, 0] = 0.0
    coeffs[-1][1, 1] = 1.0
    P = MatrixPolynomial(tuple(coeffs), builtin_basis("monomial"))
    with pytest.raises(SingularMatrixPolynomialError):
        reference_spectrum(P)


def test_diagonal_self_consistency(rng):
    # diag of scalar polynomials: spectrum is the union of the entry roots
    b = builtin_basis("monomial")
    p = np.array([2.0, -3.0, 1.0])  # roots 1, 2
    q = np.array([-6.0, 1.0, 1.0])  # roots 2, -3
    coeffs = tuple(np.diag([p[i], q[i]]) for i in range(3))
    P = MatrixPolynomial(coeffs, b)
    spec = reference_spectrum(P)
    assert np.allclose(sorted(spec.finite.real), [-3.0, 1.0, 2.0, 2.0], atol=1e-8)


def test_degree_bound_and_leading_coefficient(rng):
    P = random_problem(rng, 3, 3, "chebyshev1")
    det = det_poly(P)
    assert det.degree <= 9
    # full-rank leading coefficient: degree equals kn
    assert det.degree == 9
    coeffs = [c.copy() for c in P.coeffs]
    coeffs[-1][2] = coeffs[-1][0]
    P2 = MatrixPolynomial(tuple(coeffs), P.basis)
    assert det_poly(P2).degree < 9


def test_size_guard():
    P = MatrixPolynomial((np.eye(7), np.eye(7)), builtin_basis("monomial"))
    with pytest.raises(ValueError):
        det_poly(P)


def test_trim_poly():
    p = trim_poly([1.0, 2.0, 1e-15])
    assert p.degree == 1
    z = trim_poly([0.0, 0.0])
    assert z.is_zero
    assert trim_poly([]).is_zero


def test_scalar_poly_evaluation():
    p = ScalarPoly([2.0, -3.0, 1.0])
    assert p(1.0) == pytest.approx(0.0)
    assert p(3.0) == pytest.approx(2.0)


def test_compare_spectra_cases(rng):
    a = Spectrum(np.array([1.0, 2.0, 3.0]), 1)
    same = compare_spectra(a, a)
    assert same.matched and same.max_distance == 0.0
    permuted = Spectrum(np.array([3.0, 1.0, 2.0]), 1)
    rep = compare_spectra(a, permuted)
    assert rep.matched and rep.max_distance == 0.0
    short = Spectrum(np.array([1.0, 2.0]), 1)
    rep2 = compare_spectra(a, short)
    assert not rep2.matched and rep2.size_mismatch
    inf_off = Spectrum(np.array([1.0, 2.0, 3.0]), 0)
    rep3 = compare_spectra(a, inf_off)
    assert not rep3.matched and not rep3.infinite_match
    rep4 = compare_spectra(a, Spectrum(np.array([1.0, 2.0, 3.0 + 2e-6]), 1), tol=1e-6)
    assert not rep4.matched and rep4.max_distance == pytest.approx(2e-6)
