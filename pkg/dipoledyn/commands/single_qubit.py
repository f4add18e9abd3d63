"""`single-qubit`: product-basis populations through the two-step rotation of one ion."""
from ..gates import GATE_MODELS
from ..sweeps import run_single_qubit
from . import gate_model, physics

NAME = "single-qubit"
HELP = "Rotate one ion by --angle with the two-step schedule."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--ion", type=int, choices=(1, 2), help="ion to rotate (default 1)")
    p.add_argument("--angle", type=float, help="rotation angle in radians, (0, 2pi] (default pi)")
    p.add_argument("--rabi", type=float, help="omega in units of Im C (default 0.25)")
    p.add_argument("--klr", type=float, help="laser wavenumber times separation (default 0.2)")
    p.add_argument("--model", choices=GATE_MODELS, help="drive model (default prescribed)")
    p.add_argument("--initial", help="initial state: 00, 01, 10, 11 or g, s, a, e (default 00)")
    p.add_argument("--k0r", type=float, help="separation, sets the decay rates (default 0.2)")
    return p


def run(cfg, args):
    gate = cfg.gate
    return run_single_qubit(gate.ion, gate.angle, cfg.laser.rabi, initial=gate.initial or "00",
                            klr=cfg.laser.klr, model=gate_model(cfg), **physics(cfg))
