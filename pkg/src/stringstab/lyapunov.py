"""Evaluate the certified Lyapunov functional along simulated trajectories.

V_N(X_N, u) = X_N^T P_N X_N + int_0^1 chi^T (S + xR) chi dx, with the
augmented state X_N stacking X and the Legendre projections of chi.  For a
verified certificate, V_N must stay positive, decrease along trajectories
and stay norm-equivalent to the squared energy.
"""

from dataclasses import dataclass

import numpy as np
import scipy.integrate

from .legendre import build_block_matrices
from .sdp import verify_certificate
from .wavesim import hnorm, project_state, riemann_chi


@dataclass(frozen=True)
class LyapunovSeries:
    """V and H-norm^2 series with the fitted decay rate."""

    t: np.ndarray
    V: np.ndarray
    hnorm2: np.ndarray
    decay_rate: float          # least-squares slope of log V (tail half); nan if flat
    max_increment: float       # largest forward difference of V
    increment_tol: float
    ratio_lo: float            # bounds of V / hnorm^2 over the trajectory
    ratio_hi: float

    def to_csv(self):
        lines = ["t,V,hnorm2,ratio"]
        for t, v, h in zip(self.t, self.V, self.hnorm2):
            r = v / h if h > 0 else float("nan")
            lines.append(f"{t:.10g},{v:.10g},{h:.10g},{r:.10g}")
        return "\n".join(lines) + "\n"


def evaluate_calV(state, sys, S, R):
    """Quadrature of int_0^1 chi^T (S + xR) chi dx."""
    S = np.asarray(S, dtype=float)
    R = np.asarray(R, dtype=float)
    if not (np.allclose(S, S.T) and np.allclose(R, R.T)):
        raise ValueError("S and R must be symmetric")
    chi = riemann_chi(state, sys.c)
    W = S[None, :, :] + state.x[:, None, None] * R[None, :, :]
    integrand = np.einsum("ia,iab,ib->i", chi, W, chi)
    return float(np.trapezoid(integrand, state.x))


def augmented_state(state, sys, N):
    """X_N = [X; X_0; ...; X_N] from grid samples."""
    proj = project_state(state, sys, N)
    return np.concatenate([state.X, proj.ravel()])


def evaluate_V(state, sys, cert, N):
    """Value of the order-N Lyapunov functional at a field state."""
    P = np.asarray(cert.P, dtype=float)
    expected = sys.n + 2 * (N + 1)
    if P.shape != (expected, expected):
        raise ValueError(f"certificate P is {P.shape[0]}x{P.shape[1]}, "
                         f"order {N} needs {expected}x{expected}")
    XN = augmented_state(state, sys, N)
    return float(XN @ P @ XN) + evaluate_calV(state, sys, cert.S, cert.R)


def check_decay(traj, sys, blocks, cert, tol_coeff=10.0):
    """V series over the trajectory snapshots, with decrease and
    norm-equivalence diagnostics.

    The decrease tolerance is tol_coeff * (dt + dx^2) * V(0), reflecting the
    scheme and quadrature errors.
    """
    if not traj.snapshots:
        raise ValueError("trajectory has no stored snapshots")
    if not verify_certificate(blocks, cert).passed:
        raise ValueError("certificate failed verification; refusing to "
                         "evaluate decay against it")
    N = blocks.order
    t = np.array([s.t for s in traj.snapshots])
    V = np.array([evaluate_V(s, sys, cert, N) for s in traj.snapshots])
    h2 = np.array([hnorm(s, sys)**2 for s in traj.snapshots])

    increments = np.diff(V)
    max_inc = float(np.max(increments, initial=0.0))
    tol = tol_coeff * (traj.dt + traj.dx**2) * max(V[0], 0.0)

    # decay rate from log V on the tail half, skipping the transient
    tail = slice(len(V) // 2, None)
    positive = V[tail] > 0
    if V[0] > 0 and np.count_nonzero(positive) >= 2:
        tt, vv = t[tail][positive], np.log(V[tail][positive])
        slope = np.polyfit(tt, vv, 1)[0]
        rate = float(-slope)
    else:
        rate = float("nan")

    nz = h2 > 0
    ratios = V[nz] / h2[nz]
    lo = float(np.min(ratios)) if ratios.size else float("nan")
    hi = float(np.max(ratios)) if ratios.size else float("nan")
    return LyapunovSeries(t=t, V=V, hnorm2=h2, decay_rate=rate,
                          max_increment=max_inc, increment_tol=tol,
                          ratio_lo=lo, ratio_hi=hi)


def check_projection_derivative(traj, sys, N):
    """Residual of d/dt X_k = c 1_N chi(1) - c 1bar_N chi(0) - c L_N X.

    Central finite differences over the snapshot stride against the
    boundary-sample right-hand side; the pointwise residual is O(dt + dx)
    for smooth fields.  The integrated residual compares X_k(t) - X_k(0)
    with the time quadrature of the right-hand side; averaging suppresses
    dispersive ripples at derivative kinks, so it keeps converging on
    fields that are only C1-compatible at the corners.
    """
    if len(traj.snapshots) < 3:
        raise ValueError("need at least 3 snapshots")
    L, ones, alt = build_block_matrices(N)
    c = sys.c
    t = np.array([s.t for s in traj.snapshots])
    proj = np.array([project_state(s, sys, N).ravel() for s in traj.snapshots])
    rhs = []
    for s, p in zip(traj.snapshots, proj):
        chi = riemann_chi(s, c)
        rhs.append(c * ones @ chi[-1] - c * alt @ chi[0] - c * L @ p)
    rhs = np.array(rhs)
    dt_snap = np.diff(t)
    d_proj = (proj[2:] - proj[:-2]) / (t[2:] - t[:-2])[:, None]
    resid = d_proj - rhs[1:-1]
    max_resid = float(np.max(np.abs(resid), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(rhs))))

    cum_rhs = scipy.integrate.cumulative_trapezoid(rhs, t, axis=0, initial=0.0)
    cum_resid = (proj - proj[0]) - cum_rhs
    return {
        "max_residual": max_resid,
        "rel_residual": max_resid / scale,
        "integrated_residual": float(np.max(np.abs(cum_resid))),
        "stride_dt": float(np.mean(dt_snap)),
    }
