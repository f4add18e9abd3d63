"""
Separation-dependent dipole-dipole coupling constant C and the derived
collective decay rates. Everything here is in units of the single-ion
Einstein coefficient A.
"""
import enum
import logging
import math
from dataclasses import dataclass

from scipy import optimize

from .errors import DomainError, NoSolutionError

logger = logging.getLogger(__name__)

THETA_DEFAULT = math.pi / 2

# bracket for the inverse shift solve
K0R_LOW = 1e-3
K0R_HIGH = 0.5


class ShiftFormula(enum.Enum):
    EXACT = "exact"  # Im of the full coupling constant at theta = pi/2
    SMALL_R = "small-r"  # leading small-r expansion of Im C


@dataclass(frozen=True)
class CouplingConstant:
    value: complex
    k0r: float
    theta: float = THETA_DEFAULT

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag


@dataclass(frozen=True)
class DecayRates:
    gamma_s: float
    gamma_a: float
    gamma_e: float = 2.0

    def as_diagonal(self):
        """(0, gamma_s, gamma_a, gamma_e) in collective order."""
        return (0.0, self.gamma_s, self.gamma_a, self.gamma_e)


def _check_k0r(k0r):
    if not (math.isfinite(k0r) and k0r > 0.0):
        raise DomainError(f"k0r must be a positive finite number, got {k0r!r}.")


def _check_theta(theta):
    if not (math.isfinite(theta) and 0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}.")


# -------------------------------------------------------------
# COUPLING CONSTANT
# -------------------------------------------------------------
def coupling_c(k0r, theta=THETA_DEFAULT):
    """
    C = (3/2) e^{i x} [ (1/(i x)) (1 - cos^2 t)
                        + (1/x^2 - 1/(i x^3)) (1 - 3 cos^2 t) ]
    with x = k0r and t = theta, in units of A.
    """
    _check_k0r(k0r)
    _check_theta(theta)
    x = complex(k0r)
    cos2 = math.cos(theta) ** 2
    bracket = (1.0 / (1j * x)) * (1.0 - cos2) + (1.0 / x**2 - 1.0 / (1j * x**3)) * (1.0 - 3.0 * cos2)
    value = 1.5 * complex(math.cos(k0r), math.sin(k0r)) * bracket
    return CouplingConstant(value=value, k0r=float(k0r), theta=float(theta))


def im_c_small_r(k0r):
    """Im C = -3 [ sin x / x^2 + cos x / x^3 ] (theta = pi/2), units of A."""
    _check_k0r(k0r)
    x = float(k0r)
    return -3.0 * (math.sin(x) / x**2 + math.cos(x) / x**3)


def shift_leading_term(k0r):
    """3/(k0r)^3, the leading small-r magnitude of the cooperative shift."""
    _check_k0r(k0r)
    return 3.0 / float(k0r) ** 3


def decay_rates(c):
    return DecayRates(gamma_s=1.0 + c.re, gamma_a=1.0 - c.re, gamma_e=2.0)


def abs_shift(k0r, formula=ShiftFormula.SMALL_R):
    formula = ShiftFormula(formula)
    if formula is ShiftFormula.SMALL_R:
        return abs(im_c_small_r(k0r))
    return abs(coupling_c(k0r, THETA_DEFAULT).im)


# -------------------------------------------------------------
# INVERSE: separation giving a required shift
# -------------------------------------------------------------
def k0r_for_shift(target_abs_im_c, formula=ShiftFormula.SMALL_R):
    """
    Solve |Im C(k0r)| = target on (1e-3, 0.5) by bisection.
    |Im C| decreases monotonically on the bracket, so the root is unique.
    """
    formula = ShiftFormula(formula)
    target = float(target_abs_im_c)
    hi_val = abs_shift(K0R_LOW, formula)
    lo_val = abs_shift(K0R_HIGH, formula)
    if not (math.isfinite(target) and lo_val < target < hi_val):
        raise NoSolutionError(
            f"|Im C| = {target!r} is not attainable for k0r in ({K0R_LOW}, {K0R_HIGH}) "
            f"under {formula.value} (range {lo_val:.6g} .. {hi_val:.6g})."
        )

    def residual(x):
        return abs_shift(x, formula) / target - 1.0

    root = optimize.bisect(residual, K0R_LOW, K0R_HIGH, xtol=1e-15, rtol=1e-12, maxiter=200)
    logger.debug("k0r_for_shift(%g, %s) -> %.15g", target, formula.value, root)
    return float(root)
