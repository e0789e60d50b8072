import logging
import sys
from datetime import datetime
from typing import Optional

DEFAULT_FORMAT = '[%(asctime)s] %(name)s - %(levelname)s%(context)s - %(message)s'


def log_context(
    component: str, step: Optional[int] = None, time: Optional[float] = None
) -> dict:
    """``extra`` mapping that tags a record with the solver component, step and simulated time."""
    return {'component': component, 'step': step, 'sim_time': time}


class SolverFormatter(logging.Formatter):
    """Formatter rendering the tags of ``log_context`` as ``[component step=k t=...]``.

    Records logged without tags get an empty ``context``.
    """

    def format(self, record: logging.LogRecord) -> str:
        tags = []
        component = getattr(record, 'component', None)
        if component:
            tags.append(component)
        step = getattr(record, 'step', None)
        if step is not None:
            tags.append(f'step={step}')
        sim_time = getattr(record, 'sim_time', None)
        if sim_time is not None:
            tags.append(f't={sim_time:.6g}')
        record.context = f' [{" ".join(tags)}]' if tags else ''
        return super().format(record)


class NspnpLogger(logging.Logger):
    """Logger that attaches stack traces to errors only when DEBUG is active."""

    def error(self, msg, *args, **kwargs):
        if 'exc_info' not in kwargs:
            kwargs['exc_info'] = self.isEnabledFor(logging.DEBUG)
        super().error(msg, *args, **kwargs)


def create_isolated_logger(
    name: str,
    level: int = logging.ERROR,
    log_format: str = None,
    propagate: bool = False,
    add_console_handler: bool = True,
    add_file_handler: bool = False,
    file_path: str = None,
) -> logging.Logger:
    """
    Create a logger detached from the root logger hierarchy.

    Args:
        name: Logger name
        level: Logging level (default: logging.ERROR)
        log_format: Custom log format string
        propagate: Whether to propagate to parent loggers (default: False)
        add_console_handler: Add a stderr handler (default: True)
        add_file_handler: Add a file handler (default: False)
        file_path: Path of the log file, derived from the name when omitted

    Returns:
        Configured logger instance
    """

    logger = NspnpLogger(name)
    logger.setLevel(level)
    logger.propagate = propagate
    logger.handlers.clear()

    formatter = SolverFormatter(log_format or DEFAULT_FORMAT)

    if not add_console_handler and not add_file_handler:
        null_handler = logging.NullHandler()
        null_handler.setLevel(level)
        null_handler.setFormatter(formatter)
        logger.addHandler(null_handler)

    if add_console_handler:
        # stdout carries command output, logs go to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if add_file_handler:
        if file_path is None:
            file_path = f'{name}_{datetime.now().strftime("%Y%m%d")}.log'

        file_handler = logging.FileHandler(file_path)
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def create_null_logger(name: str, level: int = logging.ERROR) -> logging.Logger:
    """
    Create a logger that drops every message.

    Args:
        name: Logger name
        level: Logging level (default: logging.ERROR)

    Returns:
        Configured logger instance
    """

    return create_isolated_logger(
        name=name, level=level, add_console_handler=False, add_file_handler=False
    )


_null_logger: Optional[logging.Logger] = None


def resolve_logger(logger: Optional[logging.Logger]) -> logging.Logger:
    """Return the given logger, or a shared null logger when none is passed."""
    global _null_logger
    if logger is not None:
        return logger
    if _null_logger is None:
        _null_logger = create_null_logger('nspnp.null')
    return _null_logger
