"""`truth-table`: realized gate matrix and its fidelities against the ideal gate."""
import logging

from ..gates import GATE_MODELS, cnot_schedule, operator_frame, single_qubit_schedule, truth_table
from . import gate_model, physics

logger = logging.getLogger(__name__)

NAME = "truth-table"
HELP = "Evolve the four basis states through a gate and compare with the ideal map."
GATES = ("cnot", "single-qubit")


def register(sub, parents):
    p = sub.add_parser(NAME, help=HELP, parents=parents)
    p.add_argument("--gate", choices=GATES, default="cnot", help="gate to tabulate (default cnot)")
    p.add_argument("--model", choices=GATE_MODELS, help="drive model (default prescribed)")
    p.add_argument("--rabi", type=float, help="omega1r (CNOT) or omega (single-qubit), units of Im C")
    p.add_argument("--klr", type=float, help="laser wavenumber times separation (default 0.2)")
    p.add_argument("--ion", type=int, choices=(1, 2), help="ion to rotate for --gate single-qubit")
    p.add_argument("--angle", type=float, help="rotation angle for --gate single-qubit")
    p.add_argument("--k0r", type=float, help="separation, sets the decay rates (default 0.2)")
    return p


def build_schedule(cfg, gate="cnot"):
    rabi, klr = cfg.laser.rabi, cfg.laser.klr
    model = gate_model(cfg)
    if gate == "single-qubit":
        return single_qubit_schedule(model, cfg.gate.ion, cfg.gate.angle, rabi, klr)
    # "ideal" keeps the pi time of the other models: pi / (2 omega1r)
    return cnot_schedule(model, rabi, klr)


def run(cfg, args):
    schedule = build_schedule(cfg, getattr(args, "gate", "cnot"))
    result = truth_table(schedule, **physics(cfg))
    logger.info("%s: fidelity %.6f", schedule.label, result.fidelity_vs_ideal)
    summary = {
        "schedule": schedule.label,
        "duration": result.duration,
        "fidelity_vs_ideal": result.fidelity_vs_ideal,
        "process_fidelity": result.process_fidelity,
        "phase_corrected_fidelity": result.phase_corrected_fidelity,
    }
    return operator_frame(result.realized), summary
