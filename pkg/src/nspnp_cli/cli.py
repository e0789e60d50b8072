"""Command line interface for nspnp."""

from typing import Annotated, Optional

import typer

from nspnp_cli.console.console import Console
from nspnp_cli.commands.run import app as run_command
from nspnp_cli.commands.analyze import app as analyze_command
from nspnp_cli.commands.picard import app as picard_command
from nspnp_cli.commands.report import app as report_command
from nspnp_cli.commands.solvers import app as solvers_command
from nspnp_cli.commands.env import app as env_command
from nspnp_cli.commands.version import app as version_command, package_version


app = typer.Typer(
    name='nspnp',
    help='Coupled Navier-Stokes Nernst-Planck solver and partial regularity monitor.',
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)

console = Console()


def version_callback(value: bool):
    if value:
        console.banner()
        console.print(f'Version: {package_version()}')
        raise typer.Exit()


@app.callback()
def callback(
    version: Annotated[
        Optional[bool],
        typer.Option(
            '--version',
            callback=version_callback,
            is_eager=True,
            help='Show the nspnp version',
        ),
    ] = None,
):
    """Define the common command options"""


app.add_typer(run_command)
app.add_typer(analyze_command)
app.add_typer(picard_command)
app.add_typer(report_command)
app.add_typer(solvers_command)
app.add_typer(env_command)
app.add_typer(version_command)


def main():
    """Entry point for the CLI."""
    app()
