"""Parameter studies: minimum certifiable wave speed, stability charts and
the order hierarchy.

For a fixed damping c0 and order N, the minimum certifiable speed c_min is
located by a coarse feasibility scan over the bracket followed by bisection
between the last infeasible and first feasible scan points.  Scanning first
tolerates feasible sets that are not provably intervals in c.
"""

from dataclasses import dataclass

import numpy as np

from .lmi import build_affine_system, build_blocks
from .sdp import solve_feasibility


def certify(sys, N, eps=1e-6, options=None):
    """One feasibility query at the system's own (c, c0)."""
    blocks = build_blocks(sys, N)
    system = build_affine_system(blocks, eps=eps)
    return solve_feasibility(system, options=options)


def is_certified(sys, c, N, eps=1e-6, options=None):
    report = certify(sys.with_params(c=c), N, eps=eps, options=options)
    return report.status == "feasible"


def min_speed(sys, c0, N, bracket=(1.0, 20.0), tol=1e-2, n_scan=32,
              eps=1e-6, options=None):
    """Smallest certifiable wave speed in the bracket, or None.

    The returned value is certified feasible while the point one bisection
    tolerance below it is not.
    """
    c_lo, c_hi = bracket
    if not (c_lo < c_hi):
        raise ValueError("bracket must satisfy c_lo < c_hi")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    base = sys.with_params(c0=c0)
    grid = np.linspace(c_lo, c_hi, n_scan)
    idx = None
    for i, c in enumerate(grid):
        if is_certified(base, c, N, eps=eps, options=options):
            idx = i
            break
    if idx is None:
        return None
    if idx == 0:
        return float(c_lo)
    lo, hi = float(grid[idx - 1]), float(grid[idx])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_certified(base, mid, N, eps=eps, options=options):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class StabilityChart:
    """c_min over a (c0, N) grid; cells carry a status so sweep failures
    stay isolated from genuine 'none' results."""

    c0_grid: tuple
    orders: tuple
    c_min: dict       # (c0, N) -> float or None
    status: dict      # (c0, N) -> 'found' | 'none' | 'error'
    bracket: tuple
    tol: float
    errors: dict = None

    def to_csv(self):
        lines = ["c0,N,c_min,status"]
        for c0 in self.c0_grid:
            for N in self.orders:
                val = self.c_min[(c0, N)]
                cell = f"{val:.6g}" if val is not None else ""
                lines.append(f"{c0:.6g},{N},{cell},{self.status[(c0, N)]}")
        return "\n".join(lines) + "\n"

    def column(self, c0):
        """c_min values across orders for one damping value."""
        return [self.c_min[(c0, N)] for N in self.orders]


def stability_chart(sys, c0_grid, orders, bracket=(1.0, 20.0), tol=1e-2,
                    n_scan=32, eps=1e-6, options=None):
    """min_speed per (c0, N) cell; per-cell failures never abort the sweep."""
    c0_grid = tuple(float(v) for v in c0_grid)
    orders = tuple(int(N) for N in orders)
    if not c0_grid or not orders:
        raise ValueError("c0 grid and orders must be nonempty")
    c_min, status, errors = {}, {}, {}
    for c0 in c0_grid:
        for N in orders:
            try:
                val = min_speed(sys, c0, N, bracket=bracket, tol=tol,
                                n_scan=n_scan, eps=eps, options=options)
            except Exception as exc:  # fault-isolating sweep
                c_min[(c0, N)] = None
                status[(c0, N)] = "error"
                errors[(c0, N)] = repr(exc)
                continue
            c_min[(c0, N)] = val
            status[(c0, N)] = "found" if val is not None else "none"
    return StabilityChart(c0_grid=c0_grid, orders=orders, c_min=c_min,
                          status=status, bracket=tuple(bracket), tol=tol,
                          errors=errors)


@dataclass(frozen=True)
class HierarchyReport:
    order: int
    base_status: str
    padded_max_eig: dict     # eps' -> max eig of Psi_{N+1} at padded P
    resolve_status: str


def hierarchy_check(sys, N, eps=1e-6, pad_scales=(1e-4, 1e-5, 1e-6, 1e-7, 1e-8),
                    options=None):
    """Probe the order inclusion at (sys.c, sys.c0).

    From a feasible order-N certificate, pads P_{N+1} = diag(P_N, eps' I_2)
    for a sweep of small eps' and reports max eig(Psi_{N+1}) with S, R
    reused, then re-solves at N + 1 outright.
    """
    from .legendre import MAX_ORDER
    from .lmi import assemble_psi

    if N >= MAX_ORDER:
        raise ValueError(f"order {N} + 1 exceeds the supported maximum")
    report = certify(sys, N, eps=eps, options=options)
    if report.status != "feasible":
        raise ValueError(f"instance is not certified at order {N}")
    cert = report.certificate
    scale = float(np.linalg.norm(cert.P, 2))

    blocks_up = build_blocks(sys, N + 1)
    padded = {}
    for s in pad_scales:
        P_up = np.block([
            [cert.P, np.zeros((cert.P.shape[0], 2))],
            [np.zeros((2, cert.P.shape[0])), s * scale * np.eye(2)],
        ])
        psi = assemble_psi(blocks_up, P_up, cert.S, cert.R)
        padded[s] = float(np.linalg.eigvalsh(psi)[-1])

    up = certify(sys, N + 1, eps=eps, options=options)
    return HierarchyReport(order=N, base_status=report.status,
                           padded_max_eig=padded, resolve_status=up.status)
