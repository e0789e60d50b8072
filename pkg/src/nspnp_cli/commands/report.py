from pathlib import Path
from typing import Annotated

import typer

from nspnp_core.facade import Nspnp

from nspnp_cli.console.console import Console
from nspnp_cli.models import ExitCode

app = typer.Typer()

console = Console()

LEDGER_PREVIEW = ('t', 'kinetic', 'electrostatic', 'dissipation_cum', 'global_ei_residual')


@app.command()
def report(
    directory: Annotated[
        Path,
        typer.Argument(help='Output directory of run, analyze or picard.'),
    ],
):
    """Summarise the ledger, scan and fixed point outputs found in a directory."""
    console.action(f'Report for {directory}', space_after=False)
    found = Nspnp.report(directory)
    if not found:
        console.error(f'No nspnp outputs found in {directory}.')
        raise typer.Exit(ExitCode.CONFIG)

    if 'manifest' in found:
        manifest = found['manifest']
        console.faint(
            f'⎿  config {manifest["config_sha256"][:12]}, seed {manifest.get("seed")}, '
            f'{len(manifest["outputs"])} files'
        )
        console.newline()
        if manifest.get('ledger'):
            console.pairs(manifest['ledger'], title='Energy summary')

    if 'ledger' in found:
        rows = found['ledger']
        console.table(
            LEDGER_PREVIEW,
            ([row[c] for c in LEDGER_PREVIEW] for row in rows),
            title=f'Ledger ({len(rows)} rows)',
        )

    if 'analysis' in found:
        summary = dict(found['analysis'])
        summary['errors'] = len(summary.get('errors', []))
        summary['radii'] = ', '.join(f'{r:g}' for r in summary.get('radii', []))
        console.pairs(summary, title='Regularity scan')

    if 'picard' in found:
        picard = found['picard']
        console.pairs(
            {
                'iterations': picard['iterations'],
                'converged T': picard['converged_T'],
                'final ratio': picard['final_ratio'],
                'T*': picard['horizon']['T'],
                'ratio at T*': picard['horizon']['ratio'],
            },
            title='Fixed point',
        )
