"""
One module per CLI subcommand. Each exposes NAME, HELP, `register(sub, parents)`
and `run(cfg) -> (DataFrame, summary)`; the helpers below turn a RunConfig
into the library's own value types.
"""
from ..coupling import coupling_c, decay_rates
from ..dynamics import IntegratorOptions, Method
from ..errors import ConfigError
from ..feasibility import SCENARIOS, PhysicalScenario
from ..gates import GATE_MODELS
from ..hamiltonians import Units


def integrator_options(cfg):
    i = cfg.integrator
    if i.method not in {m.value for m in Method}:
        raise ConfigError(f"Unknown integrator method {i.method!r}; use rk4 or rk45.")
    return IntegratorOptions(Method(i.method), i.rel_tol, i.abs_tol, i.max_dt, i.sample_every)


def units(cfg):
    return Units(cfg.decay.a_over_imc)


def scenario(cfg):
    """Named preset with every explicitly set field applied on top."""
    s = cfg.scenario
    if s.name not in SCENARIOS and None in (s.lambda0, s.k0r, s.mass):
        raise ConfigError(f"Unknown scenario {s.name!r}; use one of {sorted(SCENARIOS)} or set lambda0, k0r and mass.")
    preset = SCENARIOS.get(s.name, SCENARIOS["rydberg"])
    return PhysicalScenario(
        lambda0=preset.lambda0 if s.lambda0 is None else s.lambda0,
        k0r=preset.k0r if s.k0r is None else s.k0r,
        mass_amu=preset.mass_amu if s.mass is None else s.mass,
        theta=preset.theta if s.theta is None else s.theta,
        einstein_a=s.einstein_a,
        name=s.name,
    )


def geometry(cfg):
    """(k0r, theta) as set, else from the named preset; checked only by coupling_c."""
    s = cfg.scenario
    if s.name not in SCENARIOS and s.k0r is None:
        raise ConfigError(f"Unknown scenario {s.name!r}; use one of {sorted(SCENARIOS)} or set k0r.")
    preset = SCENARIOS.get(s.name, SCENARIOS["rydberg"])
    k0r = preset.k0r if s.k0r is None else s.k0r
    theta = preset.theta if s.theta is None else s.theta
    return k0r, theta


def rates(cfg):
    """Collective decay rates at the configured separation."""
    return decay_rates(coupling_c(*geometry(cfg)))


def physics(cfg):
    """Keyword arguments shared by every evolving command."""
    return {"opts": integrator_options(cfg), "units": units(cfg), "rates": rates(cfg)}


def gate_model(cfg):
    model = cfg.gate.model
    if model not in GATE_MODELS:
        raise ConfigError(f"Unknown gate model {model!r}; use one of {GATE_MODELS}.")
    return model
