from nspnp_core.fields.grid import GridSpec as GridSpec, BoundaryKind as BoundaryKind
from nspnp_core.fields.fields import (
    ScalarField as ScalarField,
    VectorField as VectorField,
)
from nspnp_core.fields.history import (
    State as State,
    FieldHistory as FieldHistory,
    ParabolicCylinder as ParabolicCylinder,
    parabolic_distance as parabolic_distance,
)
from nspnp_core.fields.operators import (
    gradient as gradient,
    divergence as divergence,
    laplacian as laplacian,
    vector_laplacian as vector_laplacian,
    dirichlet_energy as dirichlet_energy,
    solenoidal_from_streamfunction as solenoidal_from_streamfunction,
)
from nspnp_core.fields.norms import (
    Ball as Ball,
    SpacetimeIntegral as SpacetimeIntegral,
    lp_norm as lp_norm,
    spacetime_lp as spacetime_lp,
    ball_mask as ball_mask,
    ball_volume as ball_volume,
)
