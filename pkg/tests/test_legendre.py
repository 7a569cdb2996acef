"""Shifted Legendre basis: recurrence, orthogonality, projections, bounds."""

import numpy as np
import pytest

from stringstab import (MAX_ORDER, LegendreBasis, bessel_bound,
                        build_block_matrices, ell_coefficient, legendre_eval,
                        project_grid)
from stringstab.legendre import gauss_rule, legendre_table


def test_boundary_values():
    for k in range(MAX_ORDER + 1):
        assert legendre_eval(k, 0.0) == pytest.approx((-1.0) ** k, abs=1e-12)
        assert legendre_eval(k, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_low_degree_closed_forms():
    x = np.linspace(0.0, 1.0, 41)
    assert np.allclose(legendre_eval(0, x), np.ones_like(x))
    assert np.allclose(legendre_eval(1, x), 2 * x - 1)
    assert np.allclose(legendre_eval(2, x), 6 * x**2 - 6 * x + 1)
    assert np.allclose(legendre_eval(3, x), 20 * x**3 - 30 * x**2 + 12 * x - 1)


def test_scalar_input_returns_float():
    val = legendre_eval(4, 0.3)
    assert isinstance(val, float)


def test_domain_and_degree_errors():
    with pytest.raises(ValueError):
        legendre_eval(2, 1.5)
    with pytest.raises(ValueError):
        legendre_eval(2, -0.1)
    with pytest.raises(ValueError):
        legendre_eval(-1, 0.5)
    with pytest.raises(ValueError):
        legendre_table(3, np.array([0.0, 2.0]))


def test_orthogonality():
    nodes, weights = gauss_rule(2 * MAX_ORDER + 2)
    table = legendre_table(MAX_ORDER, nodes)
    gram = (table * weights) @ table.T
    expected = np.diag(1.0 / (2 * np.arange(MAX_ORDER + 1) + 1))
    assert np.max(np.abs(gram - expected)) < 1e-10


def test_ell_coefficient_values():
    # zero above the diagonal and for matching parity
    assert ell_coefficient(0, 1) == 0.0
    assert ell_coefficient(2, 0) == 0.0
    assert ell_coefficient(3, 1) == 0.0
    assert ell_coefficient(1, 0) == 2.0
    assert ell_coefficient(2, 1) == 6.0
    assert ell_coefficient(3, 0) == 2.0
    assert ell_coefficient(3, 2) == 10.0
    with pytest.raises(ValueError):
        ell_coefficient(-1, 0)


def test_differentiation_rule():
    # dL_k/dx matches sum_j ell(k, j) L_j pointwise
    x = np.linspace(0.0, 1.0, 101)
    for k in range(1, MAX_ORDER + 1):
        basis = np.zeros(k + 1)
        basis[k] = 1.0
        deriv = np.polynomial.legendre.legder(basis)
        exact = 2.0 * np.polynomial.legendre.legval(2 * x - 1, deriv)
        series = sum(ell_coefficient(k, j) * legendre_eval(j, x)
                     for j in range(k))
        assert np.max(np.abs(exact - series)) < 1e-10


def test_block_matrices_structure():
    L, ones, alt = build_block_matrices(1)
    eye2 = np.eye(2)
    assert L.shape == (4, 4)
    assert np.allclose(L[2:, :2], 2.0 * eye2)
    assert np.allclose(L[:2, :2], 0.0)
    assert np.allclose(L[2:, 2:], 0.0)
    assert np.allclose(ones, np.vstack([eye2, eye2]))
    assert np.allclose(alt, np.vstack([eye2, -eye2]))


def test_basis_projects_polynomials_exactly():
    basis = LegendreBasis(2)
    chi = lambda x: np.array([legendre_eval(2, x), 1.0])
    proj = basis.project(chi)
    expected = np.array([[0.0, 1.0], [0.0, 0.0], [0.2, 0.0]])
    assert np.allclose(proj, expected, atol=1e-13)


def test_basis_accepts_samples_and_validates_shape():
    basis = LegendreBasis(1)
    samples = np.ones((basis.nodes.size, 2))
    proj = basis.project(samples)
    assert np.allclose(proj[0], [1.0, 1.0], atol=1e-13)
    assert np.allclose(proj[1], 0.0, atol=1e-13)
    with pytest.raises(ValueError):
        basis.project(np.ones((3, 2)))


def test_basis_order_and_node_validation():
    with pytest.raises(ValueError):
        LegendreBasis(MAX_ORDER + 1)
    with pytest.raises(ValueError):
        LegendreBasis(-1)
    with pytest.raises(ValueError):
        LegendreBasis(2, n_nodes=3)


def test_project_grid_second_order_convergence():
    chi = lambda x: np.column_stack([np.sin(2 * np.pi * x), np.cos(np.pi * x)])
    basis = LegendreBasis(3, n_nodes=40)
    exact = basis.project(lambda x: np.array([np.sin(2 * np.pi * x),
                                              np.cos(np.pi * x)]))
    errs = []
    for M in (100, 200):
        x = np.linspace(0.0, 1.0, M + 1)
        errs.append(np.max(np.abs(project_grid(x, chi(x), 3) - exact)))
    assert errs[0] / errs[1] > 3.5

    with pytest.raises(ValueError):
        project_grid(np.linspace(0, 1, 11), np.ones((5, 2)), 1)


def test_bessel_bound_monotone_and_below_integral(rng):
    basis = LegendreBasis(MAX_ORDER, n_nodes=64)
    for _ in range(10):
        coeff = rng.normal(size=(4, 2))
        chi = lambda x: np.array([
            coeff[0, 0] + coeff[1, 0] * np.sin(3 * x) + coeff[2, 0] * x**2,
            coeff[0, 1] + coeff[1, 1] * np.cos(2 * x) + coeff[3, 1] * x,
        ])
        W = rng.normal(size=(2, 2))
        R = W @ W.T + 0.1 * np.eye(2)
        vals = np.array([np.atleast_1d(chi(x)) for x in basis.nodes])
        integral = float(np.einsum("i,ia,ab,ib->", basis.weights, vals, R, vals))
        proj = basis.project(chi)
        prev = -np.inf
        for N in range(MAX_ORDER + 1):
            bound = bessel_bound(proj[:N + 1], R)
            assert bound >= prev - 1e-12
            assert bound <= integral + 1e-9
            prev = bound


def test_bessel_bound_requires_symmetric_R():
    with pytest.raises(ValueError):
        bessel_bound(np.ones((2, 2)), np.array([[1.0, 2.0], [0.0, 1.0]]))
