# Use an explicit re-export https://github.com/astral-sh/ruff/issues/5697#issuecomment-1631647211

from nspnp_core.models.config import (
    NspnpConfig as NspnpConfig,
    NspnpTracingConfig as NspnpTracingConfig,
)
from nspnp_core.models.parameters import (
    EllipticConfig as EllipticConfig,
    NPStepParams as NPStepParams,
    NSStepParams as NSStepParams,
    PicardConfig as PicardConfig,
    RegularityConfig as RegularityConfig,
)
from nspnp_core.models.reports import (
    JsonFloat as JsonFloat,
    Manifest as Manifest,
    HorizonSummary as HorizonSummary,
    HorizonTrialSummary as HorizonTrialSummary,
    PicardReport as PicardReport,
)
