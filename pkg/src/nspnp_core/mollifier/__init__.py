from nspnp_core.mollifier.kernel import (
    MollifierSpec as MollifierSpec,
    LagKernel as LagKernel,
    zeta as zeta,
    zeta_normalization as zeta_normalization,
)
from nspnp_core.mollifier.retarded import (
    theta as theta,
    theta_tilde as theta_tilde,
    theta_hat as theta_hat,
    shrink_compose as shrink_compose,
    shrink_map as shrink_map,
    shrink_displacement as shrink_displacement,
    divergence_correction as divergence_correction,
)
