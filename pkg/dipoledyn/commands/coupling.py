"""`coupling`: the coupling constant, shift and decay rates at one separation."""
from ..coupling import ShiftFormula, coupling_c, decay_rates, im_c_small_r, k0r_for_shift, shift_leading_term
from ..utils.tables import record_frame
from . import geometry

NAME = "coupling"
HELP = "Coupling constant C, cooperative shift and collective decay rates."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--k0r", type=float, help="separation times wavenumber (default 0.2)")
    p.add_argument("--theta", type=float, help="dipole angle in radians (default pi/2)")
    p.add_argument("--target-shift", type=float, help="also solve for the k0r giving this |Im C|/A")
    return p


def run(cfg, args):
    k0r, theta = geometry(cfg)
    c = coupling_c(k0r, theta)
    rates = decay_rates(c)
    record = {
        "k0r": k0r,
        "theta": theta,
        "re_c": c.re,
        "im_c_exact": c.im,
        "im_c_small_r": im_c_small_r(k0r),
        "leading_shift": shift_leading_term(k0r),
        "gamma_s": rates.gamma_s,
        "gamma_a": rates.gamma_a,
        "gamma_e": rates.gamma_e,
    }
    target = getattr(args, "target_shift", None)
    if target is not None:
        record["target_shift"] = target
        record["k0r_for_shift_small_r"] = k0r_for_shift(target, ShiftFormula.SMALL_R)
        record["k0r_for_shift_exact"] = k0r_for_shift(target, ShiftFormula.EXACT)
    return record_frame(record), None
