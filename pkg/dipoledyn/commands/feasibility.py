"""`feasibility`: separation, trap frequency and absolute pulse lengths for a scenario."""
from ..feasibility import SCENARIOS, scenario_report
from ..utils.tables import record_frame
from . import scenario

NAME = "feasibility"
HELP = "Laboratory numbers for the Rydberg or Yb+ proposals, or a custom set."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--scenario", choices=sorted(SCENARIOS), help="named preset (default rydberg)")
    p.add_argument("--mass", type=float, help="ion mass in amu")
    p.add_argument("--lambda0", type=float, help="transition wavelength in metres")
    p.add_argument("--k0r", type=float, help="separation times wavenumber, (0, 1]")
    p.add_argument("--theta", type=float, help="dipole angle in radians")
    p.add_argument("--einstein-a", type=float, help="Einstein coefficient A in 1/s, for pulse lengths in seconds")
    return p


def run(cfg, args):
    return record_frame(scenario_report(scenario(cfg))), None
