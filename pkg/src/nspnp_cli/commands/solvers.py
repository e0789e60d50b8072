import typer

from nspnp_core.facade import Nspnp

from nspnp_cli.console.console import Console

app = typer.Typer()

console = Console()


@app.command()
def solvers():
    """List the registered elliptic solvers."""
    factory = Nspnp._get_factory()
    custom = factory.get_custom_solvers()
    names = factory.get_supported_solvers() + custom
    default = factory.default_solver_name()

    console.action('Elliptic solvers', space_after=False)
    console.table(
        ('solver', 'type', 'default'),
        ((name, 'custom' if name in custom else 'built-in', name == default) for name in names),
    )
