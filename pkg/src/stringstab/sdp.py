"""Semidefinite feasibility of affine LMI systems, with independent verification.

The solver maximizes a common slack t subject to every constraint block
M_i(y) >= t*I via a log-det barrier path-following iteration; the problems
here are at most a few tens of variables, so everything is dense.  A report
is only marked feasible after the certificate passes an eigenvalue check
that does not share code with the solver's Cholesky-based path.
"""

import io
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .lmi import assemble_psi


@dataclass(frozen=True)
class SolverOptions:
    """Interior-point controls; the defaults suit the desk-scale LMIs here."""

    slack_cap: float = 1.0       # upper bound on t (the feasible sets are cones)
    var_cap: float = 1e6         # box |y_j| <= var_cap keeping iterates finite
    mu_init: float = 1.0
    mu_factor: float = 0.1
    mu_min: float = 1e-12
    newton_tol: float = 1e-10
    max_iter: int = 200


@dataclass(frozen=True)
class Certificate:
    """Concrete decision variables plus solver metadata."""

    P: np.ndarray
    S: np.ndarray
    R: np.ndarray
    t_star: float
    iterations: int
    eps: float
    residuals: tuple = ()  # minimum eigenvalue of each constraint block


@dataclass(frozen=True)
class SolveReport:
    status: str  # 'feasible' | 'not_certified'
    certificate: Certificate = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    min_eig_P: float
    min_eig_S: float
    min_eig_R: float
    max_eig_psi: float
    messages: tuple = ()


class _Barrier:
    """Gradient/Hessian of the log-det barrier of {M_i(y) - t I >= 0} + box."""

    def __init__(self, system, opts):
        m = system.m
        self.m = m
        self.opts = opts
        # extended coefficient tensors over z = (y, t)
        self.coeffs = []
        self.constants = []
        for C, A in zip(system.constants, system.coeffs):
            d = C.shape[0]
            ext = np.empty((m + 1, d, d))
            ext[:m] = A
            ext[m] = -np.eye(d)
            self.coeffs.append(ext)
            self.constants.append(C)

    def block_values(self, z):
        return [C + np.tensordot(z, A, axes=1)
                for C, A in zip(self.constants, self.coeffs)]

    def interior(self, z):
        t = z[-1]
        if t >= self.opts.slack_cap:
            return False
        if np.max(np.abs(z[:-1]), initial=0.0) >= self.opts.var_cap:
            return False
        for M in self.block_values(z):
            try:
                scipy.linalg.cholesky(M, lower=True)
            except scipy.linalg.LinAlgError:
                return False
        return True

    def value_grad_hess(self, z):
        """Barrier value, gradient and Hessian at a strictly interior z."""
        m = self.m
        val = 0.0
        grad = np.zeros(m + 1)
        hess = np.zeros((m + 1, m + 1))
        for C, A in zip(self.constants, self.coeffs):
            M = C + np.tensordot(z, A, axes=1)
            cf = scipy.linalg.cho_factor(M, lower=True)
            val -= 2.0 * np.sum(np.log(np.diag(cf[0])))
            iM = scipy.linalg.cho_solve(cf, np.eye(M.shape[0]))
            grad -= np.einsum("jab,ba->j", A, iM)
            B = np.einsum("ab,jbc->jac", iM, A)
            hess += np.einsum("jab,kba->jk", B, B)
        # slack cap and decision box
        t = z[-1]
        s = self.opts.slack_cap - t
        val -= np.log(s)
        grad[-1] += 1.0 / s
        hess[-1, -1] += 1.0 / s**2
        y = z[:-1]
        lo = self.opts.var_cap + y
        hi = self.opts.var_cap - y
        val -= np.sum(np.log(lo)) + np.sum(np.log(hi))
        grad[:-1] += 1.0 / hi - 1.0 / lo
        hess[:-1, :-1] += np.diag(1.0 / hi**2 + 1.0 / lo**2)
        return val, grad, hess


def _min_eigs(system, y):
    return tuple(float(np.linalg.eigvalsh(system.constraint_value(i, y))[0])
                 for i in range(len(system.constants)))


def solve_feasibility(system, options=None):
    """Maximize the common slack of an affine LMI system.

    Feasible means the optimized slack reaches the system's margin *and*
    the certificate passes independent eigenvalue verification; anything
    else is 'not_certified' (the conditions are sufficient only, so no
    instability claim is implied).
    """
    opts = options or SolverOptions()
    if not system.constants:
        return SolveReport(status="not_certified",
                           diagnostics={"flag": "empty_system"})
    bar = _Barrier(system, opts)
    m = system.m

    # strictly interior start: y = 0 and t below every block's spectrum
    t0 = min(float(np.linalg.eigvalsh(C)[0]) for C in system.constants) - 1.0
    t0 = min(t0, opts.slack_cap - 1.0)
    z = np.zeros(m + 1)
    z[-1] = t0

    obj = np.zeros(m + 1)
    obj[-1] = -1.0  # minimize -t

    iterations = 0
    flag = None
    mu = opts.mu_init
    while mu >= opts.mu_min and flag is None:
        while True:
            if iterations >= opts.max_iter:
                flag = "iteration_cap"
                break
            _, bgrad, bhess = bar.value_grad_hess(z)
            grad = obj + mu * bgrad
            hess = mu * bhess
            try:
                cf = scipy.linalg.cho_factor(hess)
                step = -scipy.linalg.cho_solve(cf, grad)
            except scipy.linalg.LinAlgError:
                flag = "singular_newton"
                break
            decrement = -float(grad @ step)
            iterations += 1
            if decrement <= opts.newton_tol:
                break
            alpha = 1.0
            while alpha > 1e-13 and not bar.interior(z + alpha * step):
                alpha *= 0.5
            if alpha <= 1e-13:
                break
            z = z + alpha * step
        mu *= opts.mu_factor

    y = z[:m]
    residuals = _min_eigs(system, y)
    t_star = min(residuals)
    diagnostics = {"iterations": iterations, "final_mu": mu,
                   "slack": t_star, "flag": flag}

    P, S, R = system.unpack(y) if system.p else (None, None, None)
    cert = Certificate(P=P, S=S, R=R, t_star=t_star, iterations=iterations,
                       eps=system.eps, residuals=residuals)
    if flag is not None or t_star < system.eps:
        return SolveReport(status="not_certified", certificate=cert,
                           diagnostics=diagnostics)
    if system.blocks is not None:
        check = verify_certificate(system.blocks, cert)
        diagnostics["verification"] = check
        if not check.passed:
            return SolveReport(status="not_certified", certificate=cert,
                               diagnostics=diagnostics)
    return SolveReport(status="feasible", certificate=cert,
                       diagnostics=diagnostics)


def verify_certificate(blocks, cert, tol=1e-9):
    """Independent eigenvalue check of a certificate against Psi_N.

    Recomputes Psi_N from the structural matrices and requires
    min eig(P), min eig(S), min eig(R) >= eps - tol and
    max eig(Psi_N) <= -eps + tol.
    """
    P = np.asarray(cert.P, dtype=float)
    S = np.asarray(cert.S, dtype=float)
    R = np.asarray(cert.R, dtype=float)
    if P.shape != (blocks.p, blocks.p):
        raise ValueError(f"P must be {blocks.p}x{blocks.p} for order "
                         f"{blocks.order}")
    psi = assemble_psi(blocks, P, S, R)
    eig_P = float(np.linalg.eigvalsh(P)[0])
    eig_S = float(np.linalg.eigvalsh(S)[0])
    eig_R = float(np.linalg.eigvalsh(R)[0])
    eig_psi = float(np.linalg.eigvalsh(psi)[-1])
    eps = cert.eps
    messages = []
    if eig_P < eps - tol:
        messages.append("P not positive definite")
    if eig_S < eps - tol:
        messages.append("S not positive definite")
    if eig_R < eps - tol:
        messages.append("R not positive definite")
    if eig_psi > -eps + tol:
        messages.append("Psi not negative definite")
    return VerificationReport(passed=not messages, min_eig_P=eig_P,
                              min_eig_S=eig_S, min_eig_R=eig_R,
                              max_eig_psi=eig_psi, messages=tuple(messages))


def export_sdpa(system, comment="stringstab feasibility problem"):
    """Render the slack-maximization problem in sparse SDPA text format.

    Variables are (y_1..y_m, t); the constraint blocks encode
    M_i(y) - t I >= 0 and the objective row minimizes -t (i.e. maximizes
    the slack).  Upper-triangular nonzeros only, 1-based indices.
    """
    out = io.StringIO()
    m = system.m
    n_blocks = len(system.constants)
    out.write(f"* {comment}\n")
    out.write("* variables: decision vector then common slack (maximized)\n")
    out.write(f"{m + 1} = mDIM\n")
    out.write(f"{n_blocks} = nBLOCK\n")
    out.write(" ".join(str(C.shape[0]) for C in system.constants) + "\n")
    out.write(" ".join(["0.0"] * m + ["-1.0"]) + "\n")

    def emit(matno, blkno, M):
        d = M.shape[0]
        for i in range(d):
            for j in range(i, d):
                v = M[i, j]
                if v != 0.0:
                    out.write(f"{matno} {blkno} {i + 1} {j + 1} {v:.17g}\n")

    for b, (C, A) in enumerate(zip(system.constants, system.coeffs), start=1):
        emit(0, b, -C)                       # F_0 = -C
        for j in range(m):
            emit(j + 1, b, A[j])             # F_j = A_j
        emit(m + 1, b, -np.eye(C.shape[0]))  # slack column
    return out.getvalue()


def read_sdpa(text):
    """Parse sparse SDPA text written by :func:`export_sdpa`.

    Returns (objective, block_sizes, F) where F[k][b] is the k-th
    coefficient matrix of block b and F[0] holds the constant matrices.
    """
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith(("*", '"'))]
    m_dim = int(lines[0].split("=")[0].split()[0])
    n_block = int(lines[1].split("=")[0].split()[0])
    sizes = [abs(int(float(v))) for v in lines[2].replace(",", " ").split()]
    if len(sizes) != n_block:
        raise ValueError("block size vector does not match nBLOCK")
    objective = np.array([float(v) for v in lines[3].replace(",", " ").split()])
    F = [[np.zeros((d, d)) for d in sizes] for _ in range(m_dim + 1)]
    for ln in lines[4:]:
        k, b, i, j, v = ln.split()
        k, b, i, j = int(k), int(b) - 1, int(i) - 1, int(j) - 1
        v = float(v)
        F[k][b][i, j] = v
        F[k][b][j, i] = v
    return objective, sizes, F
