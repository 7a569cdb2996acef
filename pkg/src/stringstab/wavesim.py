"""Finite-difference co-simulation of the ODE / damped-string coupling.

The string u_tt = c^2 u_xx is stepped on (u, v = u_t) with central second
differences in space; the left end tracks the ODE output u(0) = KX and the
right end applies the damping u_x(1) = -c0 v(1) through a ghost node.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .legendre import project_grid

CFL_MAX = 0.5
DECAY_FACTOR = 0.01
GROWTH_FACTOR = 10.0


class CompatibilityError(ValueError):
    """Initial data violates the boundary conditions."""


class DivergenceError(RuntimeError):
    """The discrete state stopped being finite."""


@dataclass(frozen=True)
class InitialCondition:
    """Initial data (u0, v0, X0); du0 is the exact spatial derivative of u0
    when available, used for a sharper compatibility check."""

    u0: callable
    v0: callable
    X0: np.ndarray
    du0: callable = None

    @staticmethod
    def zero(n):
        z = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        return InitialCondition(u0=z, v0=z, X0=np.zeros(n), du0=z)

    @staticmethod
    def cosine(sys, X0):
        """Cosine bump u0(x) = (cos(pi x) + 1) K X0 / 2 with v0 = 0."""
        X0 = np.asarray(X0, dtype=float)
        amp = float((sys.K @ X0)[0]) / 2.0
        u0 = lambda x: (np.cos(np.pi * np.asarray(x, dtype=float)) + 1.0) * amp
        du0 = lambda x: -np.pi * np.sin(np.pi * np.asarray(x, dtype=float)) * amp
        v0 = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        return InitialCondition(u0=u0, v0=v0, X0=X0, du0=du0)


@dataclass(frozen=True)
class FieldState:
    """Sampled field and ODE state at one instant."""

    t: float
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    X: np.ndarray

    @property
    def dx(self):
        return self.x[1] - self.x[0]


@dataclass(frozen=True)
class Trajectory:
    """Per-step scalar series plus optional field snapshots."""

    t: np.ndarray
    hnorm: np.ndarray        # H-norm (not squared)
    normX: np.ndarray
    ut1: np.ndarray
    ux0: np.ndarray
    dt: float
    dx: float
    classification: str      # 'decayed' | 'grew' | 'indeterminate'
    snapshots: tuple = field(default=(), repr=False)
    snapshot_stride: int = 0
    blowup_time: float = None

    def to_csv(self):
        lines = ["t,hnorm,normX,ut1,ux0"]
        for row in zip(self.t, self.hnorm, self.normX, self.ut1, self.ux0):
            lines.append(",".join(f"{v:.10g}" for v in row))
        return "\n".join(lines) + "\n"

    def snapshots_csv(self):
        lines = ["t,x,u,v"]
        for s in self.snapshots:
            for x, u, v in zip(s.x, s.u, s.v):
                lines.append(f"{s.t:.10g},{x:.10g},{u:.10g},{v:.10g}")
        return "\n".join(lines) + "\n"


def init_state(sys, M, ic, tol=1e-6):
    """Sample the initial data on an M-interval grid, checking compatibility."""
    x = np.linspace(0.0, 1.0, M + 1)
    u = np.asarray(ic.u0(x), dtype=float)
    v = np.asarray(ic.v0(x), dtype=float)
    X = np.asarray(ic.X0, dtype=float).reshape(sys.n)
    scale = max(1.0, float(np.max(np.abs(u))), float(np.max(np.abs(v))))

    kx = float((sys.K @ X)[0])
    if abs(u[0] - kx) > tol * scale:
        raise CompatibilityError(
            f"u0(0) = {u[0]:.6g} does not match K X0 = {kx:.6g}")
    if ic.du0 is not None:
        ux1 = float(ic.du0(1.0))
        tol_right = tol * scale
    else:
        dx = x[1] - x[0]
        ux1 = (1.5 * u[-1] - 2.0 * u[-2] + 0.5 * u[-3]) / dx
        tol_right = max(tol, 25.0 * dx**2) * scale
    if abs(ux1 + sys.c0 * v[-1]) > tol_right:
        raise CompatibilityError(
            f"u0_x(1) = {ux1:.6g} does not match -c0 v0(1) = "
            f"{-sys.c0 * v[-1]:.6g}")
    return FieldState(t=0.0, x=x, u=u, v=v, X=X)


def step(state, sys, dt, cfl_max=CFL_MAX, scheme="symplectic"):
    """Advance one explicit time step.

    'symplectic' updates v from the current u and then u from the new v
    (leapfrog-equivalent, stable for CFL <= 1); 'forward' is plain forward
    Euler on (u, v), faithful to the simplest scheme but only marginally
    stable, kept for convergence studies.
    """
    dx = state.dx
    if sys.c * dt / dx > cfl_max + 1e-12:
        raise ValueError(f"CFL violation: c dt/dx = {sys.c * dt / dx:.3g} "
                         f"> {cfl_max}")
    u, v, X = state.u, state.v, state.X
    c2 = sys.c**2

    acc = np.empty_like(u)
    acc[1:-1] = c2 * (u[2:] - 2.0 * u[1:-1] + u[:-2]) / dx**2
    # ghost node u[M+1] = u[M-1] - 2 dx c0 v[M] imposes u_x(1) = -c0 v(1)
    acc[-1] = c2 * (2.0 * u[-2] - 2.0 * u[-1] - 2.0 * dx * sys.c0 * v[-1]) / dx**2
    acc[0] = 0.0  # left end is algebraic, overwritten below

    v_new = v + dt * acc
    if scheme == "symplectic":
        u_new = u + dt * v_new
    elif scheme == "forward":
        u_new = u + dt * v
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    dX = sys.A @ X + sys.B[:, 0] * u[-1]
    X_new = X + dt * dX
    u_new[0] = float((sys.K @ X_new)[0])
    v_new[0] = float((sys.K @ (sys.A @ X_new + sys.B[:, 0] * u_new[-1]))[0])

    if not (np.all(np.isfinite(u_new)) and np.all(np.isfinite(v_new))
            and np.all(np.isfinite(X_new))):
        raise DivergenceError(f"non-finite state at t = {state.t + dt:.6g}")
    return replace(state, t=state.t + dt, u=u_new, v=v_new, X=X_new)


def hnorm(state, sys):
    """Energy norm (|X|^2 + ||u||^2 + c^2 ||u_x||^2 + ||v||^2)^(1/2)."""
    ux = np.gradient(state.u, state.x)
    val = (float(state.X @ state.X)
           + np.trapezoid(state.u**2, state.x)
           + sys.c**2 * np.trapezoid(ux**2, state.x)
           + np.trapezoid(state.v**2, state.x))
    return float(np.sqrt(val))


def riemann_chi(state, c):
    """Riemann coordinate chi on the grid, shape (M + 1, 2).

    chi(x) = [v(x) + c u_x(x); v(1 - x) - c u_x(1 - x)]; the second
    component uses the reflected grid index.
    """
    ux = np.gradient(state.u, state.x)
    plus = state.v + c * ux
    minus = state.v - c * ux
    return np.column_stack([plus, minus[::-1]])


def lemma1_gap(state):
    """Slack of ||u||^2 <= 2 ||u_x||^2 + 2 |u(0)|^2 (nonnegative up to
    quadrature error)."""
    ux = np.gradient(state.u, state.x)
    return float(2.0 * np.trapezoid(ux**2, state.x) + 2.0 * state.u[0]**2
                 - np.trapezoid(state.u**2, state.x))


def project_state(state, sys, N):
    """Legendre projections of chi from grid samples (trapezoid weights)."""
    return project_grid(state.x, riemann_chi(state, sys.c), N)


def _ux0(state):
    dx = state.dx
    return (-1.5 * state.u[0] + 2.0 * state.u[1] - 0.5 * state.u[2]) / dx


def simulate(sys, ic, M=200, dt=None, T=None, snapshot_stride=0,
             scheme="symplectic", cfl_max=CFL_MAX):
    """Run the co-simulation and classify the endpoint energy.

    Defaults: dt at the CFL limit, T three times ten wave transits.
    Classification compares H-norm(T) against H-norm(0): below 1% is
    'decayed', above 10x is 'grew', otherwise 'indeterminate'.
    """
    dx = 1.0 / M
    if dt is None:
        dt = cfl_max * dx / sys.c
    if T is None:
        T = 3.0 * 10.0 / sys.c
    n_steps = int(round(T / dt))

    state = init_state(sys, M, ic)
    ts = np.empty(n_steps + 1)
    hs = np.empty(n_steps + 1)
    xs = np.empty(n_steps + 1)
    ut1 = np.empty(n_steps + 1)
    ux0 = np.empty(n_steps + 1)
    snapshots = []
    blowup = None

    def record(i, s):
        ts[i] = s.t
        hs[i] = hnorm(s, sys)
        xs[i] = float(np.linalg.norm(s.X))
        ut1[i] = s.v[-1]
        ux0[i] = _ux0(s)
        if snapshot_stride and i % snapshot_stride == 0:
            snapshots.append(s)

    record(0, state)
    last = 0
    for i in range(1, n_steps + 1):
        try:
            state = step(state, sys, dt, cfl_max=cfl_max, scheme=scheme)
        except DivergenceError:
            blowup = state.t + dt
            break
        record(i, state)
        last = i

    ts, hs, xs, ut1, ux0 = (a[:last + 1] for a in (ts, hs, xs, ut1, ux0))
    h0, hT = hs[0], hs[-1]
    if blowup is not None:
        classification = "grew"
    elif h0 == 0.0:
        classification = "decayed"
    elif hT < DECAY_FACTOR * h0:
        classification = "decayed"
    elif hT > GROWTH_FACTOR * h0:
        classification = "grew"
    else:
        classification = "indeterminate"
    return Trajectory(t=ts, hnorm=hs, normX=xs, ut1=ut1, ux0=ux0, dt=dt,
                      dx=dx, classification=classification,
                      snapshots=tuple(snapshots),
                      snapshot_stride=snapshot_stride, blowup_time=blowup)
