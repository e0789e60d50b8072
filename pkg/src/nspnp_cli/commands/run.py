"""Run the coupled system from a TOML configuration."""

from pathlib import Path
from typing import Annotated, Optional

import typer

from nspnp_core.exceptions import (
    ConfigValidationException,
    NoConvergenceException,
    StabilityException,
)
from nspnp_core.facade import Nspnp

from nspnp_cli.console.console import Console
from nspnp_cli.models import ExitCode

app = typer.Typer()

console = Console()


@app.command()
def run(
    config: Annotated[
        Path,
        typer.Option('--config', '-c', help='Run configuration (TOML).'),
    ],
    out: Annotated[
        Optional[Path],
        typer.Option(
            '--out',
            '-o',
            help='Output directory. Defaults to [output] directory of the configuration.',
        ),
    ] = None,
    seed: Annotated[
        Optional[int],
        typer.Option('--seed', help='Override the seed of the initial condition noise.'),
    ] = None,
):
    """
    March the coupled Navier-Stokes Nernst-Planck system.

    Writes one snapshot file per emitted state, the energy ledger
    (ledger.csv) and a manifest with the configuration hash and the sha256
    of every output.

    Examples:

        nspnp run --config run.toml

        nspnp run --config run.toml --out output/seed-7 --seed 7
    """
    console.action('Coupled run', space_after=False)
    try:
        settings = Nspnp.load(config, seed)
    except ConfigValidationException as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.CONFIG)

    console.faint(
        f'⎿  {settings.grid.dims}D grid {settings.grid.cells}, {settings.steps} steps '
        f'in {settings.time.blocks} blocks, seed {settings.seed}'
    )
    console.newline()

    try:
        with console.progress('Time stepping') as progress:
            task = progress.add_task('Time stepping', total=settings.snapshots)
            result = Nspnp.run(
                settings,
                out,
                on_snapshot=lambda index, state: progress.update(
                    task, advance=1, description=f't={state.time:.4g}'
                ),
            )
    except StabilityException as ex:
        console.error(str(ex))
        if ex.last_state is not None:
            console.faint(f'Last good state at t={ex.last_state.time:.6g} saved as checkpoint.')
        raise typer.Exit(ExitCode.NUMERICAL)
    except NoConvergenceException as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.NUMERICAL)

    summary = result.ledger.summary()
    console.pairs(
        {
            'snapshots': len(result.history),
            'final time': result.history.t_last,
            'max energy residual': summary['max_global_ei_residual'],
            'dissipation': summary['dissipation_cum'],
            'charge imbalance': summary['charge_imbalance'],
        },
        title='Energy ledger',
    )
    if settings.output.write:
        console.success(f'Outputs written to {result.directory}')
