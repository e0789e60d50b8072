"""Fixed point study of the charge equations."""

from pathlib import Path
from typing import Annotated, Optional

import typer

from nspnp_core.exceptions import ConfigValidationException, NspnpException
from nspnp_core.facade import Nspnp

from nspnp_cli.console.console import Console
from nspnp_cli.models import ExitCode

app = typer.Typer()

console = Console()


@app.command()
def picard(
    config: Annotated[
        Path,
        typer.Option('--config', '-c', help='Run configuration (TOML).'),
    ],
    out: Annotated[
        Optional[Path],
        typer.Option('--out', '-o', help='Output directory.'),
    ] = None,
    seed: Annotated[
        Optional[int],
        typer.Option('--seed', help='Override the seed of the initial data.'),
    ] = None,
):
    """
    Iterate the charge map to its fixed point and bisect the contraction horizon.

    Writes picard.csv (iteration, ratio, increment, horizon) and picard.json
    (the converged horizon and the largest horizon contracting below the
    configured ratio).

    Examples:

        nspnp picard --config run.toml --out output/picard
    """
    console.action('Fixed point study', space_after=False)
    try:
        settings = Nspnp.load(config, seed)
    except ConfigValidationException as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.CONFIG)

    try:
        with console.spinner('Iterating...'):
            result = Nspnp.picard(settings, out)
    except NspnpException as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.NUMERICAL)

    console.table(
        ('iter', 'ratio', 'increment', 'T'),
        ((r.iter, r.ratio, r.yt_increment, r.T) for r in result.records),
        title='Ratio history',
    )
    console.success(
        f'Fixed point on T={result.solution.horizon:.4g}; '
        f'contraction ratio {result.horizon.ratio:.3g} at T*={result.horizon.T:.4g}'
    )
