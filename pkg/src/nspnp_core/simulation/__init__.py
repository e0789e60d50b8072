from nspnp_core.simulation.config import (
    SimConfig as SimConfig,
    TimeSection as TimeSection,
    MollifierSection as MollifierSection,
    InitialSection as InitialSection,
    OutputSection as OutputSection,
    PhysicsSection as PhysicsSection,
    load_sim_config as load_sim_config,
    load_section as load_section,
    parse_config as parse_config,
)
from nspnp_core.simulation.initial_conditions import (
    initial_state as initial_state,
    initial_charges as initial_charges,
    initial_velocity as initial_velocity,
    taylor_green_velocity as taylor_green_velocity,
    potential as potential,
)
from nspnp_core.simulation.ledger import (
    EnergyLedger as EnergyLedger,
    LedgerRow as LedgerRow,
    LEDGER_COLUMNS as LEDGER_COLUMNS,
)
from nspnp_core.simulation.run import run as run, advance as advance
