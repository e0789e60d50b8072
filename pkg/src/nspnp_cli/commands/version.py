import platform
import sys
from importlib.metadata import version as metadata_version

import numpy
import scipy
import typer

from nspnp_cli.console.console import Console

app = typer.Typer()

console = Console()


def package_version() -> str:
    try:
        return metadata_version('nspnp')
    except Exception:
        return 'Development version'


@app.command()
def version():
    """Print version information."""
    console.banner()
    console.print(f'Version: {package_version()}')
    console.newline()
    console.muted(
        f'Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}, '
        f'numpy {numpy.__version__}, scipy {scipy.__version__}'
    )
    console.muted(f'Platform: {platform.platform()}')
