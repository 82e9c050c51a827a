import numpy as np
import pytest

from pcshaper.basis import (
    Truncation,
    basis_norm_sq,
    build_index_set,
    gauss_legendre,
    inner_triple,
    legendre_eval,
    legendre_table,
    make_basis,
)


def test_legendre_low_degrees():
    assert legendre_eval(0, 0.3) == 1.0
    assert legendre_eval(1, -1.0) == -1.0
    assert legendre_eval(2, 0.5) == pytest.approx(-0.125, abs=1e-15)


def test_legendre_rejects_out_of_range():
    with pytest.raises(ValueError):
        legendre_eval(3, 1.5)
    with pytest.raises(ValueError):
        legendre_eval(-1, 0.0)
    with pytest.raises(ValueError):
        legendre_eval(61, 0.0)


def test_legendre_endpoint_values():
    # P_n(1) = 1 and P_n(-1) = (-1)^n for all degrees.
    for n in range(41):
        assert legendre_eval(n, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert legendre_eval(n, -1.0) == pytest.approx((-1.0) ** n, abs=1e-12)


def test_norms():
    assert basis_norm_sq(0) == 1.0
    assert basis_norm_sq(1) == pytest.approx(1 / 3)
    assert basis_norm_sq(5) == pytest.approx(1 / 11)


@pytest.mark.parametrize("w", range(41))
def test_norm_identity_by_quadrature(w):
    rule = gauss_legendre(w + 1)
    vals = legendre_table(w, rule.nodes)[:, w]
    assert rule.integrate(vals**2) == pytest.approx(basis_norm_sq(w), abs=1e-13)


def test_orthogonality():
    degree = 40
    rule = gauss_legendre(degree + 1)
    table = legendre_table(degree, rule.nodes)
    gram = table.T * rule.weights @ table
    off_diagonal = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off_diagonal)) < 1e-13


def test_inner_triple_values():
    assert inner_triple(0, 0, 0) == 1.0
    assert inner_triple(0, 3, 3) == pytest.approx(1 / 7)
    assert inner_triple(1, 1, 2) == pytest.approx(2 / 15, abs=1e-14)


def test_inner_triple_symmetry_and_vanishing():
    rng = np.random.default_rng(7)
    for _ in range(50):
        i, j, k = rng.integers(0, 12, size=3)
        value = inner_triple(int(i), int(j), int(k))
        for perm in [(j, i, k), (k, j, i), (i, k, j)]:
            assert inner_triple(*map(int, perm)) == pytest.approx(value, abs=1e-15)
        if (i + j + k) % 2 == 1 or max(i, j, k) > i + j + k - max(i, j, k):
            assert value == 0.0


def test_gauss_legendre_rules():
    r1 = gauss_legendre(1)
    assert r1.nodes == pytest.approx([0.0])
    assert r1.weights == pytest.approx([1.0])
    r2 = gauss_legendre(2)
    assert np.sort(r2.nodes) == pytest.approx([-1 / np.sqrt(3), 1 / np.sqrt(3)])
    assert r2.weights == pytest.approx([0.5, 0.5])
    r5 = gauss_legendre(5)
    assert r5.integrate(r5.nodes**4) == pytest.approx(0.2, abs=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 21])
def test_quadrature_exactness(n):
    # All monomial moments up to degree 2n - 1 match the uniform-pdf moments.
    rule = gauss_legendre(n)
    for k in range(2 * n):
        exact = 0.0 if k % 2 else 1.0 / (k + 1)
        assert rule.integrate(rule.nodes**k) == pytest.approx(exact, abs=1e-14)


def test_index_set_one_variable():
    assert build_index_set(1, 2, Truncation.TOTAL_DEGREE) == ((0,), (1,), (2,))


def test_index_set_two_variable_counts():
    total = build_index_set(2, 2, Truncation.TOTAL_DEGREE)
    assert len(total) == 6  # K = (P+2)!/(P! 2!) - 1 = 5
    tensor = build_index_set(2, 2, Truncation.TENSOR_PRODUCT)
    assert len(tensor) == 9
    for index_set in (total, tensor):
        assert index_set[0] == (0, 0)
        assert len(set(index_set)) == len(index_set)


def test_make_basis_counts_and_norms():
    b = make_basis(2, 4, Truncation.TOTAL_DEGREE)
    assert b.size == 15
    pos = b.index_position((2, 1))
    assert b.norms_sq[pos] == pytest.approx(basis_norm_sq(2) * basis_norm_sq(1))


def test_make_basis_rejects_low_quadrature():
    with pytest.raises(ValueError):
        make_basis(1, 10, quad_order=5)
    with pytest.raises(ValueError):
        make_basis(3, 2)


def test_basis_evaluate_matches_products():
    b = make_basis(2, 3)
    rng = np.random.default_rng(3)
    pts = rng.uniform(-1, 1, size=(20, 2))
    phi = b.evaluate(pts)
    for col, (i1, i2) in enumerate(b.index_set):
        expected = legendre_eval(i1, pts[:, 0]) * legendre_eval(i2, pts[:, 1])
        assert phi[:, col] == pytest.approx(expected, abs=1e-14)
