from nspnp_core.fixed_point.trajectory import YTState as YTState, yt_norm as yt_norm
from nspnp_core.fixed_point.picard import (
    PicardProblem as PicardProblem,
    PicardRecord as PicardRecord,
    HorizonTrial as HorizonTrial,
    ContractionHorizon as ContractionHorizon,
    map_F as map_F,
    contraction_ratio as contraction_ratio,
    picard_solve as picard_solve,
    find_contraction_horizon as find_contraction_horizon,
    fixed_point_gap as fixed_point_gap,
)
