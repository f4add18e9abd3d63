"""
Pulse schedules for entangled-state preparation, the CNOT and single
ion rotations, plus the fidelity measures used to judge them.

All durations are in units of 1/Im C. Schedules run on one global clock,
so laser phases continue from one segment into the next.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import config
from .coupling import DecayRates
from .dynamics import IntegratorOptions, evolve_segments
from .errors import BasisMismatchError, ContractError, DomainError
from .hamiltonians import (
    DEFAULT_KLR,
    DriveHamiltonian,
    FixedHamiltonian,
    LaserDrive,
    Units,
    check_rabi,
    cnot_matrix,
    rotation_step_matrix,
    h_cnot_ideal,
)
from .statespace import Basis, Operator, basis_state, combination
from .utils.tables import to_frame

logger = logging.getLogger(__name__)

MAX_SIMULTANEOUS_DRIVES = 2
GATE_MODELS = ("prescribed", "lasers", "ideal")


@dataclass(frozen=True)
class Segment:
    duration: float
    drives: tuple = ()
    # prescribed t -> matrix form, used instead of `drives` when set
    form: object = None

    def __post_init__(self):
        if not (math.isfinite(self.duration) and self.duration > 0.0):
            raise ContractError(f"Segment duration must be > 0, got {self.duration!r}.")
        if len(self.drives) > MAX_SIMULTANEOUS_DRIVES:
            raise ContractError(
                f"{len(self.drives)} simultaneous drives requested; at most {MAX_SIMULTANEOUS_DRIVES} are supported."
            )

    def hamiltonian(self, units, rates):
        if self.form is not None:
            return FixedHamiltonian(self.form, units, rates)
        return DriveHamiltonian(tuple(self.drives), units, rates)


@dataclass(frozen=True)
class PulseSchedule:
    segments: tuple
    label: str
    # ideal gate in the collective basis, when one is defined
    target: Operator = None

    def __post_init__(self):
        if not self.segments:
            raise ContractError("A schedule needs at least one segment.")

    @property
    def duration(self):
        return sum(seg.duration for seg in self.segments)


@dataclass(frozen=True, eq=False)
class GateResult:
    realized: Operator
    duration: float
    fidelity_vs_ideal: float
    process_fidelity: float
    phase_corrected_fidelity: float
    ideal: Operator = field(default=None, repr=False)


def _check_rabi_range(value, name):
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be > 0, got {value!r}.")
    check_rabi(value, name)


# -------------------------------------------------------------
# IDEAL TARGETS
# -------------------------------------------------------------
def ideal_cnot():
    """
    |g> and (|s>+|a>)/sqrt2 unchanged; (|s>-|a>)/sqrt2 and |e> exchanged
    with the -i phase of an exact pi swap.
    """
    g = basis_state("g").amplitudes
    e = basis_state("e").amplitudes
    u = combination(+1).amplitudes
    w = combination(-1).amplitudes
    m = np.outer(g, g) + np.outer(u, u.conj()) - 1j * (np.outer(e, w.conj()) + np.outer(w, e))
    return Operator(m, Basis.COLLECTIVE)


def _rotation(theta):
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def ideal_single_qubit(ion, theta):
    """exp(-i theta sigma_x / 2) on one ion, identity on the other (product order |ion1 ion2>)."""
    if ion not in (1, 2):
        raise DomainError(f"ion must be 1 or 2, got {ion!r}.")
    r = _rotation(theta)
    m = np.kron(r, np.eye(2)) if ion == 1 else np.kron(np.eye(2), r)
    return Operator(m, Basis.PRODUCT).to_collective()


def _ideal_swap(lower, upper, phase):
    """Exact pi pulse between two collective levels: lower -> phase*upper and back."""
    m = np.eye(4, dtype=np.complex128)
    i, j = Basis.COLLECTIVE.labels.index(lower), Basis.COLLECTIVE.labels.index(upper)
    m[i, i] = m[j, j] = 0.0
    m[j, i] = m[i, j] = phase
    return Operator(m, Basis.COLLECTIVE)


# -------------------------------------------------------------
# SCHEDULES
# -------------------------------------------------------------
def _constant(m):
    return lambda t: m


def schedule_prepare_s(omega1):
    """Running wave perpendicular to the ion axis, detuned by +Im C/2, for pi/(sqrt2 omega1)."""
    _check_rabi_range(omega1, "omega1")
    seg = Segment(math.pi / (math.sqrt(2.0) * omega1), (LaserDrive.running(omega1, 0.5),))
    return PulseSchedule((seg,), "prepare-s", _ideal_swap("g", "s", -1j))


def schedule_prepare_a(omega1, klr=DEFAULT_KLR):
    """Standing wave with the ions around a node (pair +-omega1), detuned by -Im C/2."""
    _check_rabi_range(omega1, "omega1")
    seg = Segment(math.pi / (math.sqrt(2.0) * omega1), (LaserDrive.standing_for(omega1, -0.5, klr),))
    return PulseSchedule((seg,), "prepare-a", _ideal_swap("g", "a", 1j))


def schedule_cnot(omega1r):
    """
    The prescribed two-laser CNOT form, oscillating terms included: |e>
    swaps with (|s>-|a>)/sqrt2 = |10> in pi/(2 omega1r), and |g> only sees
    terms detuned by Im C.
    """
    _check_rabi_range(omega1r, "omega1r")
    seg = Segment(math.pi / (2.0 * omega1r), form=partial(cnot_matrix, omega1r))
    return PulseSchedule((seg,), "cnot", ideal_cnot())


def schedule_cnot_lasers(omega1r, klr=DEFAULT_KLR):
    """
    Running wave on s-e (detuning -1/2, Rabi omega1r) together with a standing
    wave on a-e (detuning +1/2, Rabi -omega1r), for pi/(2 omega1r). The g-a
    term of the standing wave enters with the opposite sign to the prescribed
    form, which leaves a few percent of |g> behind at the end of the pulse.
    """
    _check_rabi_range(omega1r, "omega1r")
    drives = (
        LaserDrive.running(omega1r, -0.5),
        LaserDrive.standing_for(-omega1r, 0.5, klr),
    )
    return PulseSchedule((Segment(math.pi / (2.0 * omega1r), drives),), "cnot-lasers", ideal_cnot())


def schedule_cnot_ideal(omega):
    """The CNOT segment driven by the time-independent swap Hamiltonian for pi/omega."""
    if not (math.isfinite(omega) and omega > 0.0):
        raise DomainError(f"omega must be > 0, got {omega!r}.")
    m = h_cnot_ideal(omega).entries
    seg = Segment(math.pi / omega, form=_constant(m))
    return PulseSchedule((seg,), "cnot-ideal", ideal_cnot())


def _check_rotation(ion, theta, omega):
    if ion not in (1, 2):
        raise DomainError(f"ion must be 1 or 2, got {ion!r}.")
    if not (math.isfinite(theta) and 0.0 < theta <= 2.0 * math.pi):
        raise DomainError(f"theta must lie in (0, 2pi], got {theta!r}.")
    _check_rabi_range(omega, "omega")


def schedule_single_qubit(ion, theta, omega):
    """
    Two segments of length theta/omega each. Step 1 drives g-s and g-a,
    step 2 drives s-e and a-e, every Rabi frequency omega/2 in size.
    Ion 1 uses W_s = -W_r in step 1, so |g> couples to (|s>-|a>)/sqrt2 = |10>,
    and W_s = W_r in step 2, so |e> couples to (|s>+|a>)/sqrt2 = |01>.
    Ion 2 exchanges the two sign choices.
    """
    _check_rotation(ion, theta, omega)
    half = omega / 2.0
    first, second = (-half, half) if ion == 1 else (half, -half)
    duration = theta / omega
    step1 = Segment(duration, form=_constant(rotation_step_matrix(1, half, first)))
    step2 = Segment(duration, form=_constant(rotation_step_matrix(2, half, second)))
    return PulseSchedule((step1, step2), f"single-qubit-ion{ion}", ideal_single_qubit(ion, theta))


def schedule_single_qubit_lasers(ion, theta, omega, klr=DEFAULT_KLR):
    """
    The same two steps built from a running and a standing wave each, tuned
    to the g-s/g-a lines (step 1) and the s-e/a-e lines (step 2). Every laser
    also reaches the other transition of its pair, detuned by Im C, and the
    resulting light shift mixes |01> and |10> over the gate.
    """
    _check_rotation(ion, theta, omega)
    half = omega / 2.0
    sign = 1.0 if ion == 1 else -1.0
    duration = theta / omega
    step1 = Segment(duration, (LaserDrive.running(half, 0.5), LaserDrive.standing_for(sign * half, -0.5, klr)))
    step2 = Segment(duration, (LaserDrive.running(half, -0.5), LaserDrive.standing_for(sign * half, 0.5, klr)))
    return PulseSchedule((step1, step2), f"single-qubit-ion{ion}-lasers", ideal_single_qubit(ion, theta))


def cnot_schedule(model, omega1r, klr=DEFAULT_KLR):
    """CNOT schedule for a GATE_MODELS name; "ideal" runs the swap form at 2 omega1r."""
    if model == "prescribed":
        return schedule_cnot(omega1r)
    if model == "lasers":
        return schedule_cnot_lasers(omega1r, klr)
    if model == "ideal":
        return schedule_cnot_ideal(2.0 * omega1r)
    raise ContractError(f"Unknown gate model {model!r}; use one of {GATE_MODELS}.")


def single_qubit_schedule(model, ion, theta, omega, klr=DEFAULT_KLR):
    """The laser-built rotation for "lasers", the prescribed steps otherwise."""
    if model not in GATE_MODELS:
        raise ContractError(f"Unknown gate model {model!r}; use one of {GATE_MODELS}.")
    if model == "lasers":
        return schedule_single_qubit_lasers(ion, theta, omega, klr)
    return schedule_single_qubit(ion, theta, omega)


# -------------------------------------------------------------
# EXECUTION
# -------------------------------------------------------------
def run_schedule(schedule, psi0, opts=None, units=None, rates=None):
    units = units or Units()
    rates = rates or DecayRates(1.0, 1.0, 2.0)
    segments = [(seg.hamiltonian(units, rates), seg.duration) for seg in schedule.segments]
    return evolve_segments(segments, psi0, opts or IntegratorOptions())


# -------------------------------------------------------------
# FIDELITIES
# -------------------------------------------------------------
def state_fidelity(psi, target):
    """|<target|psi>|^2, insensitive to global phase."""
    if psi.basis is not target.basis:
        raise BasisMismatchError(f"state is {psi.basis.value}, target is {target.basis.value}.")
    return float(abs(np.vdot(target.amplitudes, psi.amplitudes)) ** 2)


def prep_fidelity_max(traj, target):
    """Maximum of the state fidelity over the samples, and the first time it is reached."""
    if len(traj) == 0:
        raise ContractError("Empty trajectory.")
    if target.basis is not Basis.COLLECTIVE:
        raise BasisMismatchError("Trajectories are collective-basis; pass a collective target.")
    overlaps = np.abs(traj.amplitudes @ target.amplitudes.conj()) ** 2
    k = int(np.argmax(overlaps))
    return float(overlaps[k]), float(traj.times[k])


def process_fidelity(realized, ideal):
    m = ideal.to_product().entries.conj().T @ realized.to_product().entries
    return float(abs(np.trace(m)) ** 2 / 16.0)


def phase_corrected_fidelity(realized, ideal):
    """Process fidelity maximized over a diagonal phase frame on the outputs."""
    m = ideal.to_product().entries.conj().T @ realized.to_product().entries
    return float(np.sum(np.abs(np.diag(m))) ** 2 / 16.0)


def gate_result(realized, ideal, duration):
    up = realized.to_product().entries
    ip = ideal.to_product().entries
    columns = [abs(np.vdot(ip[:, k], up[:, k])) ** 2 for k in range(4)]
    return GateResult(
        realized=realized,
        duration=float(duration),
        fidelity_vs_ideal=float(np.mean(columns)),
        process_fidelity=process_fidelity(realized, ideal),
        phase_corrected_fidelity=phase_corrected_fidelity(realized, ideal),
        ideal=ideal,
    )


def _final_column(schedule, opts, units, rates, label):
    return run_schedule(schedule, basis_state(label), opts, units, rates).final.amplitudes


def truth_table(schedule, opts=None, units=None, rates=None, ideal=None, workers=None):
    """
    Evolve |g>, |s>, |a>, |e> through the schedule, assemble the realized
    operator column by column and compare it with the ideal gate.
    """
    ideal = ideal or schedule.target
    if ideal is None:
        raise ContractError(f"Schedule {schedule.label!r} has no ideal target; pass one explicitly.")
    workers = workers or config.thread_cap()
    column = partial(_final_column, schedule, opts or IntegratorOptions(), units, rates)
    labels = Basis.COLLECTIVE.labels
    logger.info("truth_table: %s over %d columns with %d workers", schedule.label, len(labels), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(labels))) as pool:
            columns = list(pool.map(column, labels))
    else:
        columns = [column(lbl) for lbl in labels]
    realized = Operator(np.column_stack(columns), Basis.COLLECTIVE)
    return gate_result(realized, ideal, schedule.duration)


def operator_frame(op):
    """Product-basis matrix as a table: one row per output, re/im column pairs per input."""
    m = op.to_product().entries if op.basis is Basis.COLLECTIVE else op.entries
    labels = Basis.PRODUCT.labels
    columns = ["out"] + [f"{part}_{lbl}" for lbl in labels for part in ("re", "im")]
    rows = []
    for i, out in enumerate(labels):
        row = [out]
        for j in range(len(labels)):
            row += [float(m[i, j].real), float(m[i, j].imag)]
        rows.append(row)
    return to_frame(rows, columns)
