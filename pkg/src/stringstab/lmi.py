"""Structural matrices of the stability conditions and their affine LMI form.

The coupled plant is an ODE dX/dt = AX + B u(1) driving (and driven by) a
damped string u_tt = c^2 u_xx with u(0) = KX and u_x(1) = -c0 u_t(1).
Stability at order N is certified by the matrix inequality

    Psi_N = He(Z_N^T P_N F_N) - c Rtilde_N + c (H_N^T (S+R) H_N - G_N^T S G_N) < 0

with decision variables P_N > 0 (size n + 2(N+1)) and S, R > 0 (size 2),
acting on the extended state xi_N = [X; X_0; ...; X_N; u_t(1); c u_x(0)]
built from Legendre projections X_k of the Riemann coordinate chi.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .legendre import MAX_ORDER, build_block_matrices

#: relative tolerance for the A + BK nonsingularity test
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class SystemDescription:
    """The tuple (A, B, K, c, c0) defining the coupled system."""

    A: np.ndarray
    B: np.ndarray
    K: np.ndarray
    c: float
    c0: float

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("A must be square")
        B = np.asarray(self.B, dtype=float).reshape(n, 1)
        K = np.asarray(self.K, dtype=float).reshape(1, n)
        if not (self.c > 0.0):
            raise ValueError("wave speed c must be positive")
        if not (self.c0 > 0.0):
            raise ValueError("boundary damping c0 must be positive")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def n(self):
        return self.A.shape[0]

    def with_params(self, c=None, c0=None):
        """Copy with a different wave speed and/or damping."""
        return SystemDescription(self.A, self.B, self.K,
                                 self.c if c is None else c,
                                 self.c0 if c0 is None else c0)


def check_equilibrium(sys):
    """'unique_zero' if A + BK is nonsingular (so 0 is the only equilibrium)."""
    M = sys.A + sys.B @ sys.K
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= RANK_RTOL * s[0]:
        return "degenerate"
    return "unique_zero"


@dataclass(frozen=True)
class LmiBlocks:
    """Structural matrices at a given order N.

    All act on the extended state xi_N of size n + 2(N+1) + 2, ordered as
    [X; X_0; ...; X_N; u_t(1); c u_x(0)].
    """

    order: int
    n: int
    F: np.ndarray
    Z: np.ndarray
    calN: np.ndarray
    G: np.ndarray
    H: np.ndarray
    g: np.ndarray
    h: np.ndarray
    Btilde: np.ndarray
    c: float
    # (offset, weight) pairs locating R, 3R, ..., (2N+1)R inside Rtilde_N
    rtilde_layout: tuple = field(repr=False, default=())

    @property
    def p(self):
        """Size of P_N."""
        return self.n + 2 * (self.order + 1)

    @property
    def xi_dim(self):
        return self.p + 2

    def rtilde(self, R):
        """Assemble Rtilde_N = diag(0_n, R, 3R, ..., (2N+1)R, 0_2)."""
        out = np.zeros((self.xi_dim, self.xi_dim))
        for off, w in self.rtilde_layout:
            out[off:off + 2, off:off + 2] = w * R
        return out


def build_blocks(sys, N):
    """Structural matrices of the order-N stability condition."""
    if N < 0 or N > MAX_ORDER:
        raise ValueError(f"order must be in [0, {MAX_ORDER}]")
    if check_equilibrium(sys) == "degenerate":
        warnings.warn("A + BK is singular: the equilibrium is not unique",
                      stacklevel=2)
    n, c, c0 = sys.n, sys.c, sys.c0
    p = n + 2 * (N + 1)
    xi = p + 2

    Btilde = sys.B @ np.array([[1.0, -1.0]]) / (2.0 * c)
    g = np.array([[0.0, 1.0], [1.0 + c * c0, 0.0]])
    h = np.array([[1.0 - c * c0, 0.0], [0.0, -1.0]])

    F = np.hstack([np.eye(p), np.zeros((p, 2))])

    calN = np.zeros((n, xi))
    calN[:, :n] = sys.A + sys.B @ sys.K
    calN[:, n:n + 2] = Btilde

    G = np.zeros((2, xi))
    G[:, -2:] = g
    G += np.vstack([sys.K, np.zeros((1, n))]) @ calN

    H = np.zeros((2, xi))
    H[:, -2:] = h
    H += np.vstack([np.zeros((1, n)), sys.K]) @ calN

    L, ones, alt = build_block_matrices(N)
    calZ = ones @ H - alt @ G
    calZ[:, n:n + 2 * (N + 1)] -= L

    Z = np.vstack([calN, c * calZ])

    layout = tuple((n + 2 * k, float(2 * k + 1)) for k in range(N + 1))
    return LmiBlocks(order=N, n=n, F=F, Z=Z, calN=calN, G=G, H=H,
                     g=g, h=h, Btilde=Btilde, c=c, rtilde_layout=layout)


def assemble_psi(blocks, P, S, R):
    """Numeric Psi_N at the given decision variables; exactly symmetric."""
    P = np.asarray(P, dtype=float)
    S = np.asarray(S, dtype=float)
    R = np.asarray(R, dtype=float)
    if P.shape != (blocks.p, blocks.p):
        raise ValueError(f"P must be {blocks.p}x{blocks.p}")
    if S.shape != (2, 2) or R.shape != (2, 2):
        raise ValueError("S and R must be 2x2")
    c = blocks.c
    ZPF = blocks.Z.T @ P @ blocks.F
    psi = (ZPF + ZPF.T
           - c * blocks.rtilde(R)
           + c * (blocks.H.T @ (S + R) @ blocks.H - blocks.G.T @ S @ blocks.G))
    return 0.5 * (psi + psi.T)


def _sym_basis(dim):
    """Unit symmetric matrices for the upper-triangular vectorization."""
    out = []
    for i in range(dim):
        for j in range(i, dim):
            E = np.zeros((dim, dim))
            E[i, j] = 1.0
            E[j, i] = 1.0
            out.append(E)
    return out


def sym_vec_len(dim):
    return dim * (dim + 1) // 2


@dataclass(frozen=True)
class AffineLmiSystem:
    """Constraints M_i(y) >= eps * I, each affine in the decision vector y.

    ``constants[i]`` is the constant part of constraint i and ``coeffs[i]``
    (shape (m, d_i, d_i)) holds the per-variable symmetric coefficient
    matrices.  For the stability problem, y vectorizes (P_N, S, R) and the
    four blocks are P_N, S, R and -Psi_N.
    """

    eps: float
    constants: tuple
    coeffs: tuple
    p: int = 0  # size of P_N; 0 for generic systems
    blocks: LmiBlocks = None

    @property
    def m(self):
        return self.coeffs[0].shape[0] if self.coeffs else 0

    @property
    def block_sizes(self):
        return tuple(C.shape[0] for C in self.constants)

    def constraint_value(self, i, y):
        return self.constants[i] + np.tensordot(y, self.coeffs[i], axes=1)

    def pack(self, P, S, R):
        """Vectorize (P, S, R) into a decision vector."""
        p = self.p
        iu_p = np.triu_indices(p)
        iu_2 = np.triu_indices(2)
        return np.concatenate([np.asarray(P)[iu_p], np.asarray(S)[iu_2],
                               np.asarray(R)[iu_2]])

    def unpack(self, y):
        """Reconstruct (P, S, R) from a decision vector."""
        p = self.p
        np_vars = sym_vec_len(p)

        def unvec(v, dim):
            M = np.zeros((dim, dim))
            M[np.triu_indices(dim)] = v
            return M + np.triu(M, 1).T

        P = unvec(y[:np_vars], p)
        S = unvec(y[np_vars:np_vars + 3], 2)
        R = unvec(y[np_vars + 3:np_vars + 6], 2)
        return P, S, R


def build_affine_system(blocks, eps=1e-6):
    """Render the order-N condition as a margined affine LMI system.

    The strict inequalities P_N > 0, S > 0, R > 0 and Psi_N < 0 become
    P_N >= eps I, S >= eps I, R >= eps I and -Psi_N >= eps I.
    """
    if not (eps > 0.0):
        raise ValueError("margin eps must be positive")
    p = blocks.p
    basis_p = _sym_basis(p)
    basis_2 = _sym_basis(2)
    m = len(basis_p) + 2 * len(basis_2)
    z2 = np.zeros((2, 2))
    zp = np.zeros((p, p))

    coeff_P = np.zeros((m, p, p))
    coeff_S = np.zeros((m, 2, 2))
    coeff_R = np.zeros((m, 2, 2))
    coeff_psi = np.zeros((m, blocks.xi_dim, blocks.xi_dim))

    for k, E in enumerate(basis_p):
        coeff_P[k] = E
        coeff_psi[k] = -assemble_psi(blocks, E, z2, z2)
    off = len(basis_p)
    for k, E in enumerate(basis_2):
        coeff_S[off + k] = E
        coeff_psi[off + k] = -assemble_psi(blocks, zp, E, z2)
    off += len(basis_2)
    for k, E in enumerate(basis_2):
        coeff_R[off + k] = E
        coeff_psi[off + k] = -assemble_psi(blocks, zp, z2, E)

    constants = (zp, z2.copy(), z2.copy(),
                 np.zeros((blocks.xi_dim, blocks.xi_dim)))
    coeffs = (coeff_P, coeff_S, coeff_R, coeff_psi)
    return AffineLmiSystem(eps=float(eps), constants=constants, coeffs=coeffs,
                           p=p, blocks=blocks)


def boundary_reflection_radius(c, c0):
    """Spectral radius of g^{-1} h; < 1 iff the boundary dissipates (c0 > 0)."""
    g = np.array([[0.0, 1.0], [1.0 + c * c0, 0.0]])
    h = np.array([[1.0 - c * c0, 0.0], [0.0, -1.0]])
    return float(np.max(np.abs(np.linalg.eigvals(np.linalg.solve(g, h)))))
