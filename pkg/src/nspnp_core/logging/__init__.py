from .logger import (
    SolverFormatter as SolverFormatter,
    create_isolated_logger as create_isolated_logger,
    create_null_logger as create_null_logger,
    log_context as log_context,
    resolve_logger as resolve_logger,
)
