"""
Deterministic datasets: the cooperative shift against separation,
state-preparation dynamics and its robustness to Rabi and detuning
errors, and the CNOT population dynamics.

Every runner returns `(DataFrame, summary)`; `summary` is an ordered dict
that `write_table` appends as `# key=value` lines.
"""
import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import config
from .coupling import K0R_HIGH, DecayRates, ShiftFormula, abs_shift, coupling_c, shift_leading_term
from .dynamics import IntegratorOptions, evolve
from .errors import ContractError, DomainError
from .gates import cnot_schedule, run_schedule, single_qubit_schedule
from .hamiltonians import DEFAULT_KLR, DriveHamiltonian, LaserDrive, Units, check_rabi
from .statespace import Basis, StateVector, basis_state, combination, product_state, to_collective
from .utils.tables import to_frame

logger = logging.getLogger(__name__)

DEFAULT_POINTS = 200


class SweepKind(enum.Enum):
    SHIFT_VS_SEPARATION = "shift"
    STATE_PREP_DYNAMICS = "state-prep"
    RABI_ERROR_FIDELITY = "rabi-error"
    DETUNING_FIDELITY = "detuning"
    CNOT_DYNAMICS = "cnot"


class PulseLength(enum.Enum):
    FIXED = "fixed"
    ADAPTED = "adapted"


DEFAULT_RANGES = {
    SweepKind.SHIFT_VS_SEPARATION: (0.02, 0.5),
    SweepKind.STATE_PREP_DYNAMICS: (0.0, 20.0),
    SweepKind.RABI_ERROR_FIDELITY: (0.8, 1.2),
    SweepKind.DETUNING_FIDELITY: (0.6, 1.4),
    SweepKind.CNOT_DYNAMICS: (0.0, 10.0),
}


@dataclass(frozen=True)
class SweepSpec:
    kind: SweepKind = SweepKind.STATE_PREP_DYNAMICS
    min: float = None
    max: float = None
    points: int = DEFAULT_POINTS
    omega1: float = 0.25
    detuning_ratio: float = 1.0
    rabi_ratio: float = 1.0
    t_max: float = 20.0
    pulse_length: PulseLength = PulseLength.FIXED
    klr: float = DEFAULT_KLR
    model: str = "prescribed"

    def __post_init__(self):
        object.__setattr__(self, "kind", SweepKind(self.kind))
        object.__setattr__(self, "pulse_length", PulseLength(self.pulse_length))
        lo, hi = DEFAULT_RANGES[self.kind]
        if self.min is None:
            object.__setattr__(self, "min", lo)
        if self.max is None:
            object.__setattr__(self, "max", hi)
        if int(self.points) < 2:
            raise ContractError(f"points must be >= 2, got {self.points!r}.")
        object.__setattr__(self, "points", int(self.points))
        if not (math.isfinite(self.min) and math.isfinite(self.max) and self.min < self.max):
            raise ContractError(f"Sweep range needs min < max, got ({self.min!r}, {self.max!r}).")

    @property
    def values(self):
        return np.linspace(self.min, self.max, self.points)


def _positive(name, value):
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be > 0, got {value!r}.")


def _map_points(fn, values, workers=None):
    """Evaluate fn over values on a thread pool; results come back in input order."""
    workers = workers or config.thread_cap()
    values = list(values)
    if workers <= 1 or len(values) <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=min(workers, len(values))) as pool:
        return list(pool.map(fn, values))


def _t_pi(omega1):
    return math.pi / (math.sqrt(2.0) * omega1)


def _evolve_with_mark(h, psi0, t_max, mark, opts):
    """
    Evolve to t_max on one clock, making sure `mark` is a sample.
    Returns the trajectory and the state at `mark`.
    """
    if mark <= t_max + 1e-12:
        traj = evolve(h, psi0, t_max, opts, marks=(mark,))
        k = int(np.argmin(np.abs(traj.times - mark)))
        return traj, traj.state_at(k)
    traj = evolve(h, psi0, t_max, opts)
    return traj, evolve(h, psi0, mark, opts).final


def initial_state(label):
    """|g>,|s>,|a>,|e> or a product label 00..11, always returned collective."""
    if label in Basis.COLLECTIVE.labels:
        return basis_state(label)
    if label in Basis.PRODUCT.labels:
        return to_collective(product_state(label))
    raise DomainError(f"Unknown initial state {label!r}; use g, s, a, e or 00, 01, 10, 11.")


# -------------------------------------------------------------
# SHIFT VS SEPARATION
# -------------------------------------------------------------
def run_shift_sweep(min_k0r=0.02, max_k0r=0.5, points=DEFAULT_POINTS):
    if not 0.0 < min_k0r < max_k0r <= K0R_HIGH:
        raise DomainError(f"Need 0 < min < max <= {K0R_HIGH}, got ({min_k0r!r}, {max_k0r!r}).")
    if int(points) < 2:
        raise ContractError(f"points must be >= 2, got {points!r}.")
    rows = []
    for x in np.linspace(min_k0r, max_k0r, int(points)):
        rows.append(
            (
                float(x),
                math.log10(abs_shift(x, ShiftFormula.SMALL_R)),
                math.log10(shift_leading_term(x)),
                coupling_c(x).re,
            )
        )
    df = to_frame(rows, ["k0r", "log10_abs_imc_small_r", "log10_leading", "re_c"])
    return df, {"kind": SweepKind.SHIFT_VS_SEPARATION.value, "points": int(points)}


# -------------------------------------------------------------
# STATE PREPARATION
# -------------------------------------------------------------
def prep_drive(omega, detuning_ratio=1.0, target="s", klr=DEFAULT_KLR):
    """Drive taking |g> to |s> (running wave, +1/2) or to |a> (node, -1/2)."""
    if target == "s":
        return LaserDrive.running(omega, 0.5 * detuning_ratio)
    if target == "a":
        return LaserDrive.standing_for(omega, -0.5 * detuning_ratio, klr)
    raise DomainError(f"target must be 's' or 'a', got {target!r}.")


def run_state_prep(omega1=0.25, detuning_ratio=1.0, rabi_ratio=1.0, t_max=20.0,
                   target="s", opts=None, units=None, rates=None, klr=DEFAULT_KLR):
    """
    Populations from |g> under the preparation drive, executed with
    Rabi rabi_ratio*omega1 and detuning detuning_ratio/2. The summary holds
    the maximum target population, its time, and the target population at
    the nominal pi time of omega1.
    """
    _positive("omega1", omega1)
    _positive("detuning_ratio", detuning_ratio)
    _positive("rabi_ratio", rabi_ratio)
    _positive("t_max", t_max)
    omega = rabi_ratio * omega1
    check_rabi(omega, "omega1")
    h = DriveHamiltonian((prep_drive(omega, detuning_ratio, target, klr),), units or Units(), *_rates(rates))
    t_pi = _t_pi(omega1)
    traj, at_t_pi = _evolve_with_mark(h, basis_state("g"), t_max, t_pi, opts or IntegratorOptions())

    col = Basis.COLLECTIVE.labels.index(target)
    p = np.abs(traj.amplitudes[:, col]) ** 2
    k = int(np.argmax(p))
    summary = {
        "target": target,
        "F_max": float(p[k]),
        "t_at_max": float(traj.times[k]),
        "T_pi": t_pi,
        f"P_{target}_at_Tpi": float(abs(at_t_pi[target]) ** 2),
    }
    logger.info("state prep to |%s>: F=%.4f at t=%.4f", target, summary["F_max"], summary["t_at_max"])
    return traj.populations(), summary


def _rates(rates):
    return () if rates is None else (rates,)


def _prep_point(omega1, detuning_ratio, pulse, t_window, opts, units, rates, rabi_ratio):
    omega = rabi_ratio * omega1
    h = DriveHamiltonian((prep_drive(omega, detuning_ratio),), units or Units(), *_rates(rates))
    traj, at_pulse = _evolve_with_mark(h, basis_state("g"), max(t_window, pulse), pulse, opts)
    in_window = traj.times <= t_window + 1e-12
    f_max = float(np.max(np.abs(traj.amplitudes[in_window, 1]) ** 2))
    return float(abs(at_pulse["s"]) ** 2), f_max


def run_rabi_error_sweep(omega1=0.25, min_ratio=0.8, max_ratio=1.2, points=DEFAULT_POINTS,
                         pulse_length=PulseLength.FIXED, opts=None, units=None, rates=None, workers=None):
    """
    P_s after one pulse when the executed Rabi frequency is ratio*omega1.
    "fixed" keeps the nominal length pi/(sqrt2 omega1); "adapted" uses
    pi/(sqrt2 omega) for the executed omega. F_max is the largest P_s
    during the pulse.
    """
    spec = SweepSpec(SweepKind.RABI_ERROR_FIDELITY, min_ratio, max_ratio, points, omega1=omega1, pulse_length=pulse_length)
    _positive("omega1", omega1)
    _positive("min_ratio", spec.min)
    opts = opts or IntegratorOptions()

    def point(ratio):
        pulse = _t_pi(omega1) if spec.pulse_length is PulseLength.FIXED else _t_pi(ratio * omega1)
        return _prep_point(omega1, 1.0, pulse, pulse, opts, units, rates, ratio)

    results = _map_points(point, spec.values, workers)
    rows = [(float(r), ps, f) for r, (ps, f) in zip(spec.values, results)]
    df = to_frame(rows, ["rabi_ratio", "P_s_at_T", "F_max"])
    logger.info("rabi-error sweep: %d points, %s pulse length", spec.points, spec.pulse_length.value)
    return df, {
        "kind": spec.kind.value,
        "omega1": omega1,
        "pulse_length": spec.pulse_length.value,
        "min_P_s_at_T": float(df["P_s_at_T"].min()),
    }


def run_detuning_sweep(omega1=0.25, min_ratio=0.6, max_ratio=1.4, points=DEFAULT_POINTS,
                       t_max=None, opts=None, units=None, rates=None, workers=None):
    """
    Preparation fidelity against the laser detuning (in units of Im C/2).
    F_max is the largest P_s reached within [0, t_max], t_max defaulting to
    twice the pi time; P_s_at_Tpi is read at the nominal pi time.
    """
    spec = SweepSpec(SweepKind.DETUNING_FIDELITY, min_ratio, max_ratio, points, omega1=omega1)
    _positive("omega1", omega1)
    _positive("min_ratio", spec.min)
    t_pi = _t_pi(omega1)
    window = t_max if t_max is not None else 2.0 * t_pi
    _positive("t_max", window)
    opts = opts or IntegratorOptions()
    point = partial(_detuning_point, omega1, t_pi, window, opts, units, rates)
    results = _map_points(point, spec.values, workers)
    rows = [(float(d), ps, f) for d, (ps, f) in zip(spec.values, results)]
    df = to_frame(rows, ["detuning_ratio", "P_s_at_Tpi", "F_max"])
    best = int(df["F_max"].idxmax())
    logger.info("detuning sweep: %d points, best ratio %.4f", spec.points, df["detuning_ratio"][best])
    return df, {
        "kind": spec.kind.value,
        "omega1": omega1,
        "best_detuning_ratio": float(df["detuning_ratio"][best]),
        "best_F_max": float(df["F_max"][best]),
    }


def _detuning_point(omega1, t_pi, window, opts, units, rates, detuning_ratio):
    return _prep_point(omega1, detuning_ratio, t_pi, window, opts, units, rates, 1.0)


# -------------------------------------------------------------
# CNOT DYNAMICS
# -------------------------------------------------------------
def run_cnot_dynamics(omega1r=0.25, t_max=10.0, initial="e", opts=None, units=None, rates=None, klr=DEFAULT_KLR,
                      model="prescribed"):
    """
    Populations under the CNOT drive of the given gate model, held on past
    the gate time up to t_max. P_swap is the population of
    (|s>-|a>)/sqrt2 = |10>, which exchanges with |e>; P_frozen that of
    (|s>+|a>)/sqrt2 = |01>, which the drive leaves alone.
    """
    _positive("t_max", t_max)
    schedule = cnot_schedule(model, omega1r, klr)
    seg = schedule.segments[0]
    h = seg.hamiltonian(units or Units(), rates or DecayRates(1.0, 1.0, 2.0))
    psi0 = initial if isinstance(initial, StateVector) else initial_state(initial)
    traj, at_gate = _evolve_with_mark(h, psi0, t_max, seg.duration, opts or IntegratorOptions())

    amps = traj.amplitudes
    swap = np.abs(amps @ combination(-1).amplitudes.conj()) ** 2
    frozen = np.abs(amps @ combination(+1).amplitudes.conj()) ** 2
    pops = np.abs(amps) ** 2
    rows = zip(traj.times, pops[:, 0], pops[:, 3], swap, frozen, traj.norms)
    df = to_frame(rows, ["t", "P_g", "P_e", "P_swap", "P_frozen", "norm"])
    w = combination(-1).amplitudes
    summary = {
        "model": model,
        "T_cnot": seg.duration,
        "P_e_at_T": float(abs(at_gate["e"]) ** 2),
        "P_swap_at_T": float(abs(np.vdot(w, at_gate.amplitudes)) ** 2),
    }
    return df, summary


# -------------------------------------------------------------
# DISPATCH
# -------------------------------------------------------------
def run_sweep(spec, opts=None, units=None, rates=None, workers=None):
    """Run the dataset a SweepSpec names; returns (DataFrame, summary)."""
    kind = spec.kind
    logger.info("sweep %s: range (%g, %g), %d points", kind.value, spec.min, spec.max, spec.points)
    if kind is SweepKind.SHIFT_VS_SEPARATION:
        return run_shift_sweep(spec.min, spec.max, spec.points)
    if kind is SweepKind.STATE_PREP_DYNAMICS:
        return run_state_prep(spec.omega1, spec.detuning_ratio, spec.rabi_ratio, spec.t_max,
                              opts=opts, units=units, rates=rates, klr=spec.klr)
    if kind is SweepKind.RABI_ERROR_FIDELITY:
        return run_rabi_error_sweep(spec.omega1, spec.min, spec.max, spec.points, spec.pulse_length,
                                    opts=opts, units=units, rates=rates, workers=workers)
    if kind is SweepKind.DETUNING_FIDELITY:
        return run_detuning_sweep(spec.omega1, spec.min, spec.max, spec.points,
                                  opts=opts, units=units, rates=rates, workers=workers)
    return run_cnot_dynamics(spec.omega1, spec.t_max, opts=opts, units=units, rates=rates, klr=spec.klr,
                             model=spec.model)


# -------------------------------------------------------------
# SINGLE-ION ROTATION
# -------------------------------------------------------------
def run_single_qubit(ion=1, theta=math.pi, omega=0.25, initial="00", opts=None, units=None, rates=None,
                     klr=DEFAULT_KLR, model="prescribed"):
    """Product-basis populations through the two-step rotation of one ion."""
    schedule = single_qubit_schedule(model, ion, theta, omega, klr)
    psi0 = initial if isinstance(initial, StateVector) else initial_state(initial)
    traj = run_schedule(schedule, psi0, opts, units, rates)
    df = traj.product_populations()
    final = df.iloc[-1]
    summary = {
        "ion": ion,
        "theta": theta,
        "model": model,
        "duration": schedule.duration,
    }
    for lbl in Basis.PRODUCT.labels:
        summary[f"P_{lbl}_final"] = float(final[f"P_{lbl}"])
    return df, summary
