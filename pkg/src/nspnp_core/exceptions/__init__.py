from nspnp_core.exceptions.nspnp_exception import NspnpException as NspnpException
from nspnp_core.exceptions.coverage_exception import (
    CoverageException as CoverageException,
)
from nspnp_core.exceptions.incompatible_rhs_exception import (
    IncompatibleRhsException as IncompatibleRhsException,
)
from nspnp_core.exceptions.no_convergence_exception import (
    NoConvergenceException as NoConvergenceException,
)
from nspnp_core.exceptions.stability_exception import (
    StabilityException as StabilityException,
)
from nspnp_core.exceptions.degenerate_pair_exception import (
    DegeneratePairException as DegeneratePairException,
)
from nspnp_core.exceptions.max_iters_exceeded_exception import (
    MaxItersExceededException as MaxItersExceededException,
)
from nspnp_core.exceptions.snapshot_format_exception import (
    SnapshotFormatException as SnapshotFormatException,
)
from nspnp_core.exceptions.config_validation_exception import (
    ConfigValidationException as ConfigValidationException,
)
