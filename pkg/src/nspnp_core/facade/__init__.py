from nspnp_core.facade.nspnp import (
    Nspnp as Nspnp,
    RunResult as RunResult,
    AnalysisResult as AnalysisResult,
    PicardResult as PicardResult,
)
