from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit codes shared by every command."""

    OK = 0
    CONFIG = 1
    """Invalid configuration or unusable input files."""

    NUMERICAL = 2
    """Unstable run, failed elliptic solve or a fixed point that does not contract."""

    STRICT = 3
    """A cylinder failed the regularity criterion under ``--strict``."""


def parse_radii(value: str) -> tuple[float, ...]:
    """``'0.25,0.125'`` to a strictly decreasing tuple of radii."""
    radii = {float(part) for part in value.split(',') if part.strip()}
    if not radii:
        raise ValueError('At least one radius is required.')
    return tuple(sorted(radii, reverse=True))
