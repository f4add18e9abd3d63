"""`cnot`: population dynamics under the CNOT drive."""
from ..gates import GATE_MODELS
from ..sweeps import run_cnot_dynamics
from . import gate_model, physics

NAME = "cnot"
HELP = "Populations of g, e and the swapped/frozen (s, a) combinations during the CNOT."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--rabi", type=float, help="omega1r in units of Im C (default 0.25)")
    p.add_argument("--klr", type=float, help="laser wavenumber times separation (default 0.2)")
    p.add_argument("--model", choices=GATE_MODELS, help="drive model (default prescribed)")
    p.add_argument("--tmax", type=float, help="end time in units of 1/Im C (default 20)")
    p.add_argument("--initial", help="initial state: g, s, a, e or 00, 01, 10, 11 (default e)")
    p.add_argument("--k0r", type=float, help="separation, sets the decay rates (default 0.2)")
    return p


def run(cfg, args):
    return run_cnot_dynamics(cfg.laser.rabi, cfg.sweep.tmax, initial=cfg.gate.initial or "e",
                             klr=cfg.laser.klr, model=gate_model(cfg), **physics(cfg))
