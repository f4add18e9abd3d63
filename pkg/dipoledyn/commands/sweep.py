"""`sweep`: the reproducible datasets (shift, state prep, Rabi error, detuning, CNOT)."""
from ..gates import GATE_MODELS
from ..sweeps import SweepKind, SweepSpec, run_sweep
from . import gate_model, physics

NAME = "sweep"
HELP = "Produce one of the reproducible datasets as CSV."


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--kind", choices=[k.value for k in SweepKind], help="dataset (default state-prep)")
    p.add_argument("--min", type=float, help="lower end of the swept parameter")
    p.add_argument("--max", type=float, help="upper end of the swept parameter")
    p.add_argument("--points", type=int, help="number of sweep points (default 200)")
    p.add_argument("--rabi", type=float, help="omega1 in units of Im C (default 0.25)")
    p.add_argument("--detuning-ratio", type=float, help="detuning in units of Im C/2 (default 1)")
    p.add_argument("--rabi-ratio", type=float, help="executed / nominal Rabi frequency (default 1)")
    p.add_argument("--tmax", type=float, help="end time for the dynamics kinds (default 20)")
    p.add_argument("--pulse-length", choices=("fixed", "adapted"), help="rabi-error protocol (default fixed)")
    p.add_argument("--klr", type=float, help="laser wavenumber times separation (default 0.2)")
    p.add_argument("--model", choices=GATE_MODELS, help="drive model (default prescribed)")
    p.add_argument("--k0r", type=float, help="separation, sets the decay rates (default 0.2)")
    return p


def spec_from(cfg):
    s, laser = cfg.sweep, cfg.laser
    return SweepSpec(
        kind=SweepKind(s.kind),
        min=s.min,
        max=s.max,
        points=s.points,
        omega1=laser.rabi,
        detuning_ratio=laser.detuning_ratio,
        rabi_ratio=laser.rabi_ratio,
        t_max=s.tmax,
        pulse_length=s.pulse_length,
        klr=laser.klr,
        model=gate_model(cfg),
    )


def run(cfg, args):
    return run_sweep(spec_from(cfg), **physics(cfg))
