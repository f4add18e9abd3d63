"""
Hamiltonian builders in the collective basis [g, s, a, e].

Unit convention: hbar = 1 and every frequency is measured in units of the
cooperative shift Im C, so times are in units of 1/Im C. The ratio
A/Im C (`Units.a_over_imc`) only enters when dissipation is switched on.
"""
import cmath
import enum
import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coupling import DecayRates
from .errors import ContractError, DomainError, ValidityWarning
from .statespace import DIM, Basis, Operator, combination

logger = logging.getLogger(__name__)

G, S, A, E = range(DIM)
INV_SQRT2 = 1.0 / math.sqrt(2.0)

# A/Im C for k0r = 0.2 (Im C = 375 A)
DEFAULT_A_OVER_IMC = 1.0 / 375.0
RABI_VALIDITY_LIMIT = 0.5
DEFAULT_KLR = 0.2


@dataclass(frozen=True)
class Units:
    """a_over_imc = A / Im C; zero disables dissipation."""

    a_over_imc: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a_over_imc) and self.a_over_imc >= 0.0):
            raise DomainError(f"a_over_imc must be >= 0, got {self.a_over_imc!r}.")

    @property
    def dissipative(self):
        return self.a_over_imc > 0.0


class WaveMode(enum.Enum):
    RUNNING_PERPENDICULAR = "running"
    STANDING_NODE = "standing"


@dataclass(frozen=True)
class RabiPair:
    omega1: complex
    omega2: complex


@dataclass(frozen=True)
class LaserDrive:
    wave_mode: WaveMode
    omega0: complex
    detuning: float
    klr: float = DEFAULT_KLR

    def __post_init__(self):
        if not math.isfinite(self.detuning):
            raise DomainError(f"detuning must be finite, got {self.detuning!r}.")
        if not cmath.isfinite(complex(self.omega0)):
            raise DomainError(f"omega0 must be finite, got {self.omega0!r}.")

    @classmethod
    def running(cls, omega, detuning):
        return cls(WaveMode.RUNNING_PERPENDICULAR, complex(omega), float(detuning))

    @classmethod
    def standing_for(cls, omega_eff, detuning, klr=DEFAULT_KLR):
        """Standing wave whose realized pair is exactly (omega_eff, -omega_eff)."""
        factor = standing_wave_factor(klr)
        if factor == 0.0:
            raise DomainError("klr = 0 puts both ions on the node; no effective Rabi frequency exists.")
        return cls(WaveMode.STANDING_NODE, complex(omega_eff) / (2j * math.sin(klr / 2.0)), float(detuning), float(klr))

    def pair(self):
        return rabi_pair(self)


def check_rabi(omega, what="Rabi frequency"):
    """Warn when |omega| leaves the regime where the level shift dominates."""
    if abs(omega) > RABI_VALIDITY_LIMIT:
        msg = f"{what} {abs(omega):.4g} Im C exceeds {RABI_VALIDITY_LIMIT} Im C; off-resonant terms will not be negligible."
        logger.warning(msg)
        warnings.warn(msg, ValidityWarning, stacklevel=3)


def standing_wave_factor(klr):
    """|2 sin(k_L r / 2)|: standing-wave Rabi frequency relative to the running wave."""
    return abs(2.0 * math.sin(klr / 2.0))


# -------------------------------------------------------------
# RABI FREQUENCIES SEEN BY THE TWO IONS
# -------------------------------------------------------------
def rabi_pair(drive):
    omega0 = complex(drive.omega0)
    if drive.wave_mode is WaveMode.RUNNING_PERPENDICULAR:
        return RabiPair(omega0, omega0)
    if drive.klr == 0.0:
        msg = "Standing wave with klr = 0: both Rabi frequencies vanish."
        logger.warning(msg)
        warnings.warn(msg, ValidityWarning, stacklevel=2)
        return RabiPair(0j, 0j)
    w = 2j * omega0 * math.sin(drive.klr / 2.0)
    return RabiPair(w, -w)


# -------------------------------------------------------------
# CONDITIONAL (NO-PHOTON) HAMILTONIAN AND FREE HAMILTONIAN
# -------------------------------------------------------------
def h_cond(units, c):
    """
    (1/2i) [ (A + C)|s><s| + (A - C)|a><a| + 2A|e><e| ]

    Energies are in units of |Im C|, so Im C is always normalized to +-1 and
    the s/a entries carry a real shift of +-1/2. A and Re C (C given in units
    of A) are scaled by a_over_imc; with a_over_imc = 0 only the shift survives.
    """
    a = units.a_over_imc
    cc = complex(a * c.value.real, float(np.sign(c.value.imag)))
    diag = np.array([0.0, a + cc, a - cc, 2.0 * a], dtype=np.complex128) / 2j
    return Operator(np.diag(diag), Basis.COLLECTIVE)


def h0(omega0_level, shift):
    """w0 (|s><s| + |a><a| + 2|e><e|) + (shift/2)(|s><s| - |a><a|)."""
    if not shift >= 0.0:
        raise DomainError(f"shift must be >= 0, got {shift!r}.")
    w = float(omega0_level)
    return Operator(np.diag([0.0, w + shift / 2.0, w - shift / 2.0, 2.0 * w]), Basis.COLLECTIVE, hermitian=True)


def h_decay(units, rates):
    """Anti-Hermitian part of h_cond: -(i/2) a diag(0, gamma_s, gamma_a, gamma_e)."""
    diag = -0.5j * units.a_over_imc * np.array(rates.as_diagonal(), dtype=np.complex128)
    return Operator(np.diag(diag), Basis.COLLECTIVE)


# -------------------------------------------------------------
# LASER INTERACTION IN THE INTERACTION PICTURE
# -------------------------------------------------------------
def _drive_terms(drives):
    for item in drives:
        if isinstance(item, LaserDrive):
            yield rabi_pair(item), item.detuning
        else:
            pair, detuning = item
            yield pair, float(detuning)


def interaction_matrix(drives, t):
    m = np.zeros((DIM, DIM), dtype=np.complex128)
    k = 1.0 / (2.0 * math.sqrt(2.0))
    down = cmath.exp(-0.5j * t)
    up = cmath.exp(0.5j * t)
    for pair, detuning in _drive_terms(drives):
        plus = k * (pair.omega1 + pair.omega2) * cmath.exp(1j * detuning * t)
        minus = k * (pair.omega1 - pair.omega2) * cmath.exp(1j * detuning * t)
        m[G, S] += plus * down
        m[S, E] += plus * up
        m[G, A] -= minus * up
        m[A, E] += minus * down
    return m + m.conj().T


def h_interaction(drives, t):
    """
    Sum over drives of
        (1/2sqrt2) [ (W1+W2)(e^{-it/2}|g><s| + e^{it/2}|s><e|)
                   - (W1-W2)(e^{it/2}|g><a| - e^{-it/2}|a><e|) ] e^{i d t} + h.c.

    `drives` holds LaserDrive objects or (RabiPair, detuning) tuples.
    """
    if t < 0.0:
        raise DomainError(f"t must be >= 0, got {t!r}.")
    return Operator(interaction_matrix(drives, t), Basis.COLLECTIVE, hermitian=True)


# -------------------------------------------------------------
# CNOT HAMILTONIANS
# -------------------------------------------------------------
def cnot_matrix(omega1r, t, oscillating=True):
    omega1s = -omega1r
    m = np.zeros((DIM, DIM), dtype=np.complex128)
    m[S, E] = omega1r * INV_SQRT2
    m[A, E] = omega1s * INV_SQRT2
    if oscillating:
        m[G, S] = omega1r * INV_SQRT2 * cmath.exp(-1j * t)
        m[G, A] = -omega1r * INV_SQRT2 * cmath.exp(1j * t)
    return m + m.conj().T


def h_cnot(omega1r, t, oscillating=True):
    """
    (1/sqrt2)(W_r|s><e| + W_s|a><e| + W_r e^{-it}|g><s| - W_r e^{it}|g><a|) + h.c.
    with W_s = -W_r. `oscillating=False` keeps only the resonant s-e/a-e part.
    """
    if not omega1r > 0.0:
        raise DomainError(f"omega1r must be > 0, got {omega1r!r}.")
    return Operator(cnot_matrix(omega1r, t, oscillating), Basis.COLLECTIVE, hermitian=True)


def rotation_step_matrix(step, omega1r, omega1s):
    """
    One step of the single-ion rotation, time independent:
    step 1 is (1/sqrt2)(W_r|g><s| + W_s|g><a|) + h.c.,
    step 2 is (1/sqrt2)(W_r|s><e| + W_s|a><e|) + h.c.
    |g> (step 1) or |e> (step 2) couples to (W_r|s> + W_s|a>)/sqrt2 only.
    """
    if step not in (1, 2):
        raise ContractError(f"Rotation step must be 1 or 2, got {step!r}.")
    m = np.zeros((DIM, DIM), dtype=np.complex128)
    if step == 1:
        m[G, S] = omega1r * INV_SQRT2
        m[G, A] = omega1s * INV_SQRT2
    else:
        m[S, E] = omega1r * INV_SQRT2
        m[A, E] = omega1s * INV_SQRT2
    return m + m.conj().T


CNOT_CONVENTIONS = ("swap-10", "swap-01")


def h_cnot_ideal(omega, convention="swap-10"):
    """
    (omega/2)(|e><v| + |v><e|), time independent.

    convention "swap-10": v = (|s> - |a>)/sqrt2, the combination that swaps with
    |e> in the exact-swap closed form and in the two-laser construction.
    convention "swap-01": v = (|s> + |a>)/sqrt2.
    """
    if not omega > 0.0:
        raise DomainError(f"omega must be > 0, got {omega!r}.")
    if convention not in CNOT_CONVENTIONS:
        raise ContractError(f"Unknown CNOT convention {convention!r}; use one of {CNOT_CONVENTIONS}.")
    v = combination(-1 if convention == "swap-10" else 1).amplitudes
    e = np.zeros(DIM, dtype=np.complex128)
    e[E] = 1.0
    coupling = np.outer(e, v.conj())
    return Operator(0.5 * omega * (coupling + coupling.conj().T), Basis.COLLECTIVE, hermitian=True)


# -------------------------------------------------------------
# TIME-DEPENDENT BUILDER CONSUMED BY THE INTEGRATOR
# -------------------------------------------------------------
@dataclass(frozen=True)
class DriveHamiltonian:
    """
    t -> H(t) for a set of simultaneous drives, with the optional decay
    term added. `matrix(t)` returns the raw array the integrator uses.
    """

    drives: tuple = ()
    units: Units = field(default_factory=Units)
    rates: DecayRates = field(default_factory=lambda: DecayRates(1.0, 1.0, 2.0))

    def matrix(self, t):
        m = interaction_matrix(self.drives, t)
        if self.units.dissipative:
            m = m + h_decay(self.units, self.rates).entries
        return m

    def __call__(self, t):
        return Operator(self.matrix(t), Basis.COLLECTIVE)


def drive_hamiltonian(drives, units=None, rates=None):
    return DriveHamiltonian(
        drives=tuple(drives),
        units=units or Units(),
        rates=rates or DecayRates(1.0, 1.0, 2.0),
    )


@dataclass(frozen=True, eq=False)
class FixedHamiltonian:
    """A prescribed t -> matrix form (ideal or two-laser CNOT), with the optional decay term."""

    fn: object
    units: Units = field(default_factory=Units)
    rates: DecayRates = field(default_factory=lambda: DecayRates(1.0, 1.0, 2.0))

    def matrix(self, t):
        m = self.fn(t)
        if self.units.dissipative:
            m = m + h_decay(self.units, self.rates).entries
        return m

    def __call__(self, t):
        return Operator(self.matrix(t), Basis.COLLECTIVE)
