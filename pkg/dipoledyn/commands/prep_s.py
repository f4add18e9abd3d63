"""`prep-s`: populations while |g> is driven towards the symmetric state |s>."""
from ..sweeps import run_state_prep
from . import physics

NAME = "prep-s"
HELP = "Prepare |s> with a running wave detuned by Im C/2."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--rabi", type=float, help="Rabi frequency omega1 in units of Im C (default 0.25)")
    p.add_argument("--detuning-ratio", type=float, help="detuning in units of Im C/2 (default 1)")
    p.add_argument("--rabi-ratio", type=float, help="executed / nominal Rabi frequency (default 1)")
    p.add_argument("--tmax", type=float, help="end time in units of 1/Im C (default 20)")
    p.add_argument("--k0r", type=float, help="separation, sets the decay rates (default 0.2)")
    return p


def run(cfg, args):
    laser = cfg.laser
    return run_state_prep(laser.rabi, laser.detuning_ratio, laser.rabi_ratio, cfg.sweep.tmax,
                          target="s", klr=laser.klr, **physics(cfg))
