"""Regularity scan of a snapshot directory."""

from pathlib import Path
from typing import Annotated, Optional

import typer

from nspnp_core.exceptions import ConfigValidationException, SnapshotFormatException
from nspnp_core.facade import Nspnp
from nspnp_core.models.parameters import RegularityConfig
from nspnp_core.simulation import load_section, parse_config

from nspnp_cli.console.console import Console
from nspnp_cli.models import ExitCode, parse_radii

app = typer.Typer()

console = Console()


def regularity_config(
    path: Optional[Path],
    radii: Optional[str],
    epsilon0: Optional[float],
    epsilon1: Optional[float],
) -> RegularityConfig:
    """The ``[regularity]`` table of ``path`` with the command line overrides applied.

    Raises
    ------
    ConfigValidationException
        If the file or the overrides do not validate
    """
    base = load_section(path, 'regularity', RegularityConfig) if path else RegularityConfig()
    overrides = {}
    if radii is not None:
        try:
            overrides['radii'] = parse_radii(radii)
        except ValueError as ex:
            raise ConfigValidationException(
                f'Invalid --radii value [{radii}]: {ex}', 'config'
            ) from ex
    if epsilon0 is not None:
        overrides['epsilon0'] = epsilon0
    if epsilon1 is not None:
        overrides['epsilon1'] = epsilon1
    if not overrides:
        return base
    return parse_config({**base.model_dump(), **overrides}, RegularityConfig, 'command line')


@app.command()
def analyze(
    snapshots: Annotated[
        Path,
        typer.Argument(help='Directory holding the snapshot files of a run.'),
    ],
    config: Annotated[
        Optional[Path],
        typer.Option('--config', '-c', help='TOML file with a [regularity] table.'),
    ] = None,
    out: Annotated[
        Optional[Path],
        typer.Option('--out', '-o', help='Report directory. Defaults to the snapshot directory.'),
    ] = None,
    strict: Annotated[
        bool,
        typer.Option('--strict', help='Exit with code 3 when any cylinder is flagged.'),
    ] = False,
    radii: Annotated[
        Optional[str],
        typer.Option('--radii', help='Comma separated cylinder radii, e.g. 0.25,0.125.'),
    ] = None,
    epsilon0: Annotated[
        Optional[float],
        typer.Option('--epsilon0', help='Threshold of the cubic criterion.'),
    ] = None,
    epsilon1: Annotated[
        Optional[float],
        typer.Option('--epsilon1', help='Threshold of the gradient criterion.'),
    ] = None,
):
    """
    Scan the snapshots of a run for cylinders failing the gradient criterion.

    Writes analysis.json (every cylinder report, the covering sum and the
    local energy balance) and analysis.csv (one row per scanned center).

    Examples:

        nspnp analyze output

        nspnp analyze output --radii 0.25,0.125 --epsilon1 0.05 --strict
    """
    console.action('Regularity scan', space_after=False)
    try:
        settings = regularity_config(config, radii, epsilon0, epsilon1)
    except ConfigValidationException as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.CONFIG)

    try:
        with console.spinner('Scanning cylinders...'):
            result = Nspnp.analyze(snapshots, settings, out)
    except (SnapshotFormatException, ValueError) as ex:
        console.error(str(ex))
        raise typer.Exit(ExitCode.CONFIG)

    summary = result.scan.summary()
    console.pairs(
        {
            'centers': summary['centers'],
            'skipped': summary['skipped'],
            'flagged': summary['flagged'],
            'covering sum': result.vitali.cover_sum,
            'local energy residual': result.probe.residual if result.probe else None,
        },
        title='Scan',
    )
    if summary['skipped']:
        console.info(f"{summary['skipped']} centers skipped, their cylinders leave the data.")
    for error in result.scan.errors:
        console.warning(str(error))

    if result.flagged:
        console.table(
            ('t0', 'x0', 'radius', 'B'),
            (
                (r.cylinder.t0, str(r.cylinder.x0), r.cylinder.radius, r.grad_value)
                for r in result.scan.flagged
            ),
            title='Flagged cylinders',
        )
        if strict:
            console.error(f'{result.flagged} cylinders failed the gradient criterion.')
            raise typer.Exit(ExitCode.STRICT)
        console.warning(f'{result.flagged} cylinders failed the gradient criterion.')
    else:
        console.success('No cylinder failed the gradient criterion.')
