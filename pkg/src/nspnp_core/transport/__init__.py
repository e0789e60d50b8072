from nspnp_core.transport.nernst_planck import (
    np_step as np_step,
    drift_divergence as drift_divergence,
    electric_divergence as electric_divergence,
    lp_ledger as lp_ledger,
    lp_dissipation as lp_dissipation,
)
from nspnp_core.transport.momentum import (
    ns_step as ns_step,
    electro_force as electro_force,
    advection_divergence as advection_divergence,
    project as project,
    kinetic_energy as kinetic_energy,
)
