"""Shifted Legendre polynomials on [0, 1], projections and Bessel-type bounds.

The shifted family L_k(x) = P_k(2x - 1) satisfies L_k(0) = (-1)^k, L_k(1) = 1
and int_0^1 L_j L_k = delta_jk / (2k + 1).
"""

import numpy as np

# LMI sizes stay desk-scale; charts in practice use N <= 5.
MAX_ORDER = 10


def legendre_eval(k, x):
    """Shifted Legendre polynomial of degree k at x in [0, 1].

    Uses the three-term recurrence on t = 2x - 1; stable for all supported
    degrees, unlike the raw alternating-sum definition.
    """
    if k < 0:
        raise ValueError("degree k must be nonnegative")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("x must lie in [0, 1]")
    t = 2.0 * x - 1.0
    p_prev = np.ones_like(t)
    if k == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = t.copy()
    for m in range(2, k + 1):
        p, p_prev = ((2 * m - 1) * t * p - (m - 1) * p_prev) / m, p
    return p if p.ndim else float(p)


def legendre_table(N, x):
    """Values of L_0..L_N at points x, as an (N + 1, len(x)) array."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("x must lie in [0, 1]")
    t = 2.0 * x - 1.0
    table = np.empty((N + 1, x.size))
    table[0] = 1.0
    if N >= 1:
        table[1] = t
    for m in range(2, N + 1):
        table[m] = ((2 * m - 1) * t * table[m - 1] - (m - 1) * table[m - 2]) / m
    return table


def ell_coefficient(k, j):
    """Differentiation coefficient: dL_k/dx = sum_j ell(k, j) L_j."""
    if k < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if j > k:
        return 0.0
    return float((2 * j + 1) * (1 - (-1) ** (j + k)))


def build_block_matrices(N):
    """Block matrices (L_N, ones_N, alt_ones_N) acting on stacked 2-vectors.

    L_N is 2(N+1) x 2(N+1) with (k, j) block ell(k, j) * I_2; ones_N stacks
    N + 1 copies of I_2 and alt_ones_N stacks (-1)^k I_2.
    """
    eye2 = np.eye(2)
    m = 2 * (N + 1)
    L = np.zeros((m, m))
    for k in range(N + 1):
        for j in range(k + 1):
            L[2 * k:2 * k + 2, 2 * j:2 * j + 2] = ell_coefficient(k, j) * eye2
    ones = np.tile(eye2, (N + 1, 1))
    alt = np.vstack([(-1) ** k * eye2 for k in range(N + 1)])
    return L, ones, alt


def gauss_rule(n_nodes):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    t, w = np.polynomial.legendre.leggauss(n_nodes)
    return 0.5 * (t + 1.0), 0.5 * w


class LegendreBasis:
    """Quadrature-backed basis L_0..L_N on [0, 1].

    The node count must be at least 2N + 2 so that products of basis
    polynomials are integrated exactly.
    """

    def __init__(self, N, n_nodes=None):
        if N < 0 or N > MAX_ORDER:
            raise ValueError(f"order must be in [0, {MAX_ORDER}]")
        if n_nodes is None:
            n_nodes = 2 * N + 2
        if n_nodes < 2 * N + 2:
            raise ValueError("need at least 2N + 2 quadrature nodes")
        self.N = N
        self.nodes, self.weights = gauss_rule(n_nodes)
        self.table = legendre_table(N, self.nodes)

    def project(self, chi):
        """Projection coefficients int_0^1 chi(x) L_k(x) dx for k = 0..N.

        ``chi`` is a callable returning a 2-vector, or an array of samples at
        the quadrature nodes with shape (n_nodes, 2).
        """
        if callable(chi):
            vals = np.array([np.atleast_1d(chi(x)) for x in self.nodes], dtype=float)
        else:
            vals = np.asarray(chi, dtype=float)
            if vals.shape[0] != self.nodes.size:
                raise ValueError(
                    f"samples ({vals.shape[0]}) do not match the quadrature "
                    f"rule ({self.nodes.size} nodes)"
                )
        # (N+1, nodes) x (nodes, 2) with quadrature weights folded in
        return (self.table * self.weights) @ vals


def project_grid(x, chi_vals, N):
    """Trapezoid projection of grid-sampled chi onto L_0..L_N.

    For uniform simulator grids; accuracy is O(dx^2).
    """
    x = np.asarray(x, dtype=float)
    chi_vals = np.asarray(chi_vals, dtype=float)
    if chi_vals.shape[0] != x.size:
        raise ValueError("sample count does not match the grid")
    table = legendre_table(N, x)
    return np.array([np.trapezoid(table[k, :, None] * chi_vals, x, axis=0)
                     for k in range(N + 1)])


def bessel_bound(proj, R):
    """Lower bound sum_k (2k+1) X_k^T R X_k for int_0^1 chi^T R chi."""
    R = np.asarray(R, dtype=float)
    if R.shape != (2, 2) or not np.allclose(R, R.T):
        raise ValueError("R must be a symmetric 2x2 matrix")
    proj = np.asarray(proj, dtype=float)
    weights = 2 * np.arange(proj.shape[0]) + 1
    return float(np.einsum("k,ka,ab,kb->", weights, proj, R, proj))
