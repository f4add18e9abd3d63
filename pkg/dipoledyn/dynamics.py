"""
Integration of i d(psi)/dt = H(t) psi with hbar = 1.

H(t) may be non-Hermitian (decay enabled); psi is then never
renormalized, so its squared norm is the probability that no photon
has been emitted.
"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ContractError, DomainError, IntegrationError
from .statespace import DIM, U_B, Basis, StateVector, to_collective
from .utils.tables import to_frame

logger = logging.getLogger(__name__)

GRID_EPS = 1e-12


class Method(enum.Enum):
    FIXED_RK4 = "rk4"
    ADAPTIVE_RK45 = "rk45"


@dataclass(frozen=True)
class IntegratorOptions:
    method: Method = Method.ADAPTIVE_RK45
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_dt: float = 2.0 * math.pi / 50.0
    sample_every: float = 0.02

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        for name in ("rel_tol", "abs_tol", "max_dt", "sample_every"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be > 0, got {value!r}.")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of a collective-basis wavefunction; `amplitudes` has shape (n, 4)."""

    times: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(len(times), DIM)
        if len(times) == 0:
            raise ContractError("A trajectory needs at least one sample.")
        if np.any(np.diff(times) <= 0.0):
            raise ContractError("Trajectory times must be strictly increasing.")
        times.setflags(write=False)
        amps.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amplitudes", amps)

    def __len__(self):
        return len(self.times)

    @property
    def norms(self):
        return np.linalg.norm(self.amplitudes, axis=1)

    @property
    def states(self):
        return tuple(StateVector(a, Basis.COLLECTIVE) for a in self.amplitudes)

    def state_at(self, index):
        return StateVector(self.amplitudes[index], Basis.COLLECTIVE)

    @property
    def final(self):
        return self.state_at(-1)

    def populations(self):
        p = np.abs(self.amplitudes) ** 2
        rows = zip(self.times, p[:, 0], p[:, 1], p[:, 2], p[:, 3], self.norms)
        return to_frame(rows, ["t", "P_g", "P_s", "P_a", "P_e", "norm"])

    def product_populations(self):
        prod = self.amplitudes @ U_B.conj()  # rows: U_B^dagger applied to each sample
        p = np.abs(prod) ** 2
        rows = zip(self.times, p[:, 0], p[:, 1], p[:, 2], p[:, 3], self.norms)
        return to_frame(rows, ["t", "P_00", "P_01", "P_10", "P_11", "norm"])

    def then(self, other):
        """Concatenate a trajectory that starts where this one ends."""
        if abs(other.times[0] - self.times[-1]) <= GRID_EPS:
            other_t, other_a = other.times[1:], other.amplitudes[1:]
        else:
            other_t, other_a = other.times, other.amplitudes
        return Trajectory(np.concatenate([self.times, other_t]), np.vstack([self.amplitudes, other_a]))


# -------------------------------------------------------------
# INTERNALS
# -------------------------------------------------------------
def _matrix_fn(h):
    if hasattr(h, "matrix"):
        return h.matrix

    def fn(t):
        value = h(t)
        return value.entries if hasattr(value, "entries") else np.asarray(value, dtype=np.complex128)

    return fn


def sample_grid(t_start, t_end, sample_every, marks=()):
    """
    t_start, t_start + dt, ... strictly below t_end, then t_end itself.
    Interior `marks` that are not already samples are slotted in.
    """
    n = int(math.floor((t_end - t_start) / sample_every + GRID_EPS))
    grid = t_start + sample_every * np.arange(n + 1)
    grid = np.append(grid[grid < t_end - GRID_EPS], t_end)
    extra = [m for m in marks if t_start < m < t_end and np.min(np.abs(grid - m)) > GRID_EPS]
    if extra:
        grid = np.sort(np.concatenate([grid, extra]))
    return grid


def rk4_step(fun, t, y, dt):
    """Runge-Kutta 4 integrator to propagate a single time step."""
    dt2 = dt / 2.0
    k1 = fun(t, y)
    k2 = fun(t + dt2, y + k1 * dt2)
    k3 = fun(t + dt2, y + k2 * dt2)
    k4 = fun(t + dt, y + k3 * dt)
    return y + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0)


def _rk4(rhs, y0, grid, max_dt):
    out = np.empty((len(grid), DIM), dtype=np.complex128)
    y = np.array(y0, dtype=np.complex128)
    out[0] = y
    steps = 0
    for i in range(1, len(grid)):
        a, b = grid[i - 1], grid[i]
        n = max(1, int(math.ceil(abs(b - a) / max_dt - GRID_EPS)))
        dt = (b - a) / n
        t = a
        for _ in range(n):
            y = rk4_step(rhs, t, y, dt)
            t += dt
        steps += n
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"RK4 produced non-finite amplitudes near t={b:.6g}.", time=float(b))
        out[i] = y
    logger.debug("rk4: %d steps over [%g, %g]", steps, grid[0], grid[-1])
    return out


def _rk45(rhs, y0, grid, opts):
    sol = solve_ivp(
        rhs,
        (grid[0], grid[-1]),
        np.array(y0, dtype=np.complex128),
        method="RK45",
        t_eval=grid,
        rtol=opts.rel_tol,
        atol=opts.abs_tol,
        max_step=opts.max_dt,
    )
    if not sol.success or sol.y.shape[1] != len(grid):
        stopped = float(sol.t[-1]) if len(sol.t) else float(grid[0])
        raise IntegrationError(f"Integration failed near t={stopped:.6g}: {sol.message}", time=stopped)
    logger.debug("rk45: %d rhs evaluations over [%g, %g]", sol.nfev, grid[0], grid[-1])
    return sol.y.T


def propagate(h, y0, grid, opts):
    """Integrate along `grid` (increasing or decreasing); returns amplitudes at each grid point."""
    matrix = _matrix_fn(h)

    def rhs(t, y):
        return -1j * (matrix(t) @ y)

    if opts.method is Method.FIXED_RK4:
        return _rk4(rhs, y0, grid, opts.max_dt)
    return _rk45(rhs, y0, grid, opts)


def _collective(psi0):
    if psi0.basis is Basis.PRODUCT:
        return to_collective(psi0)
    return psi0


# -------------------------------------------------------------
# PUBLIC OPERATIONS
# -------------------------------------------------------------
def evolve(h, psi0, t_end, opts=None, t_start=0.0, marks=()):
    """
    Solve i dpsi/dt = H(t) psi from t_start to t_end.

    `h` is either a callable t -> Operator/array or an object exposing
    `matrix(t)`. Samples fall on t_start + k*sample_every plus t_end, and on
    every interior time in `marks`; marks never restart the integrator.
    """
    opts = opts or IntegratorOptions()
    if not t_end > t_start:
        raise DomainError(f"t_end must exceed t_start={t_start!r}, got {t_end!r}.")
    psi0 = _collective(psi0)
    grid = sample_grid(float(t_start), float(t_end), opts.sample_every, marks)
    logger.info("evolve: %s from t=%g to t=%g (%d samples)", opts.method.value, t_start, t_end, len(grid))
    amps = propagate(h, psi0.amplitudes, grid, opts)
    return Trajectory(grid, amps)


def evolve_segments(segments, psi0, opts=None, t_start=0.0):
    """
    Run consecutive (h, duration) segments on one global clock and
    return the joined trajectory.
    """
    if not segments:
        raise ContractError("At least one segment is required.")
    traj = None
    state = _collective(psi0)
    t = float(t_start)
    for h, duration in segments:
        part = evolve(h, state, t + duration, opts, t_start=t)
        traj = part if traj is None else traj.then(part)
        state = part.final
        t += duration
    return traj


def rabi_analytic_ps(omega1, t):
    """P_s(t) = sin^2(omega1 t / sqrt2)."""
    if not omega1 > 0.0:
        raise DomainError(f"omega1 must be > 0, got {omega1!r}.")
    if t < 0.0:
        raise DomainError(f"t must be >= 0, got {t!r}.")
    return math.sin(omega1 * t / math.sqrt(2.0)) ** 2


def survival_probability(traj):
    """Squared norm at each sample: the no-photon probability."""
    return [float(x) for x in traj.norms**2]


def time_reversal_check(h, psi0, t_end, opts=None):
    """Evolve to t_end and back to 0; return |psi_back - psi0|."""
    opts = opts or IntegratorOptions()
    if not t_end > 0.0:
        raise DomainError(f"t_end must be > 0, got {t_end!r}.")
    matrix = _matrix_fn(h)
    for t in (0.0, 0.5 * t_end, t_end):
        m = matrix(t)
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ContractError("time_reversal_check needs a Hermitian H(t); disable decay first.")
    psi0 = _collective(psi0)
    forward = propagate(h, psi0.amplitudes, np.array([0.0, float(t_end)]), opts)[-1]
    back = propagate(h, forward, np.array([float(t_end), 0.0]), opts)[-1]
    return float(np.linalg.norm(back - psi0.amplitudes))
