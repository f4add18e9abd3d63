"""
Conversions from the dimensionless model to laboratory numbers: ion
separation, the trap frequency needed to hold the ions that close, and
absolute pulse lengths for a given Einstein coefficient.
"""
import logging
import math
from dataclasses import dataclass

from scipy import constants

from .coupling import THETA_DEFAULT, ShiftFormula, abs_shift, coupling_c, decay_rates, shift_leading_term
from .errors import DomainError

logger = logging.getLogger(__name__)

# CODATA values, all SI
CONSTANTS = {
    "elementary_charge": constants.e,
    "vacuum_permittivity": constants.epsilon_0,
    "atomic_mass_constant": constants.physical_constants["atomic mass constant"][0],
}

# Rabi frequency (units of Im C) the absolute pulse lengths are quoted for
REPORT_RABI = 0.25


def _positive(name, value):
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}.")


@dataclass(frozen=True)
class PhysicalScenario:
    lambda0: float
    k0r: float
    mass_amu: float
    theta: float = THETA_DEFAULT
    einstein_a: float = None
    name: str = "custom"

    def __post_init__(self):
        _positive("lambda0", self.lambda0)
        _positive("mass_amu", self.mass_amu)
        if not (math.isfinite(self.theta) and 0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}.")
        if not (math.isfinite(self.k0r) and 0.0 < self.k0r <= 1.0):
            raise DomainError(f"k0r must lie in (0, 1], got {self.k0r!r}.")
        if self.einstein_a is not None:
            _positive("einstein_a", self.einstein_a)


RYDBERG = PhysicalScenario(lambda0=10e-6, k0r=0.2, mass_amu=100.0, name="rydberg")
YB_ION = PhysicalScenario(lambda0=3.43e-6, k0r=0.25, mass_amu=171.0, name="yb-ion")
YB_ION_TIGHT = PhysicalScenario(lambda0=3.43e-6, k0r=0.2, mass_amu=171.0, name="yb-ion-tight")

SCENARIOS = {s.name: s for s in (RYDBERG, YB_ION, YB_ION_TIGHT)}


# -------------------------------------------------------------
# GEOMETRY AND TRAP
# -------------------------------------------------------------
def separation(k0r, lambda0):
    """r = k0r * lambda0 / 2pi (metres)."""
    _positive("k0r", k0r)
    _positive("lambda0", lambda0)
    return k0r * lambda0 / (2.0 * math.pi)


def trap_frequency(mass_amu, r):
    """
    Trap frequency (Hz) at which the Coulomb repulsion of two singly
    charged ions of mass `mass_amu` balances at separation `r` (metres):

        f = (1/2pi) sqrt(e^2 / (2pi eps0 M m_u r^3))
    """
    _positive("mass_amu", mass_amu)
    _positive("r", r)
    e = CONSTANTS["elementary_charge"]
    eps0 = CONSTANTS["vacuum_permittivity"]
    m = mass_amu * CONSTANTS["atomic_mass_constant"]
    return math.sqrt(e**2 / (2.0 * math.pi * eps0 * m * r**3)) / (2.0 * math.pi)


# -------------------------------------------------------------
# PULSE LENGTHS AND DECAY
# -------------------------------------------------------------
def t_pi_absolute(omega1, shift_over_a, einstein_a=None):
    """
    Length of the g-s pi pulse pi/(sqrt2 omega1), omega1 in units of Im C.
    Returns (T in units of 1/A, T in seconds or None).
    """
    _positive("omega1", omega1)
    _positive("shift_over_a", shift_over_a)
    t_over_a = math.pi / (math.sqrt(2.0) * omega1) / shift_over_a
    if einstein_a is None:
        return t_over_a, None
    _positive("einstein_a", einstein_a)
    return t_over_a, t_over_a / einstein_a


def t_cnot_absolute(omega1r, shift_over_a, einstein_a=None):
    """Same as t_pi_absolute for the CNOT length pi/(2 omega1r)."""
    _positive("omega1r", omega1r)
    _positive("shift_over_a", shift_over_a)
    t_over_a = math.pi / (2.0 * omega1r) / shift_over_a
    if einstein_a is None:
        return t_over_a, None
    _positive("einstein_a", einstein_a)
    return t_over_a, t_over_a / einstein_a


def decay_during(t_over_a, gamma):
    """Probability of no photon emission, exp(-gamma t), for a level decaying at gamma A."""
    if not (math.isfinite(t_over_a) and t_over_a >= 0.0):
        raise DomainError(f"t_over_a must be >= 0, got {t_over_a!r}.")
    if not (math.isfinite(gamma) and gamma >= 0.0):
        raise DomainError(f"gamma must be >= 0, got {gamma!r}.")
    return math.exp(-gamma * t_over_a)


# -------------------------------------------------------------
# REPORT
# -------------------------------------------------------------
def scenario_report(s):
    """Single-record report (ordered dict) for a scenario; see README for the fields."""
    r = separation(s.k0r, s.lambda0)
    c = coupling_c(s.k0r, s.theta)
    rates = decay_rates(c)
    leading = shift_leading_term(s.k0r)
    trap = trap_frequency(s.mass_amu, r)
    t_pi, t_pi_s = t_pi_absolute(REPORT_RABI, leading, s.einstein_a)
    t_cnot, t_cnot_s = t_cnot_absolute(REPORT_RABI, leading, s.einstein_a)

    report = {
        "scenario": s.name,
        "lambda0_m": s.lambda0,
        "k0r": s.k0r,
        "theta": s.theta,
        "mass_amu": s.mass_amu,
        "r_m": r,
        "r_um": r * 1e6,
        "re_c": c.re,
        "abs_imc_exact": abs(c.im),
        "abs_imc_small_r": abs_shift(s.k0r, ShiftFormula.SMALL_R),
        "leading_shift": leading,
        "gamma_s": rates.gamma_s,
        "gamma_a": rates.gamma_a,
        "gamma_e": rates.gamma_e,
        "trap_frequency_hz": trap,
        "trap_frequency_mhz": trap / 1e6,
        "rabi": REPORT_RABI,
        "t_pi_over_a": t_pi,
        "t_cnot_over_a": t_cnot,
        "no_photon_during_t_pi": decay_during(t_pi, rates.gamma_s),
    }
    if s.einstein_a is not None:
        report["einstein_a"] = s.einstein_a
        report["t_pi_s"] = t_pi_s
        report["t_cnot_s"] = t_cnot_s
    logger.info("scenario %s: r=%.4g um, trap=%.4g MHz", s.name, r * 1e6, trap / 1e6)
    return report
