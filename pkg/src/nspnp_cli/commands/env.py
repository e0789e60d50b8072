from importlib.resources import files
from pathlib import Path

import typer

from nspnp_cli.console.console import Console
from nspnp_cli.models import ExitCode

app = typer.Typer()

console = Console()

TEMPLATES = {'.env': '.env.example', 'nspnp.toml': 'nspnp.example.toml'}


@app.command()
def env(
    force: bool = typer.Option(False, '--force', '-f', help='Overwrite existing files.'),
):
    """Create a starter .env and a run configuration in the current directory."""
    console.action('Create configuration files')
    try:
        for target, template in TEMPLATES.items():
            path: Path = Path.cwd() / target
            if path.exists() and not force:
                console.highlight(f'{target} already exists')
                if not typer.confirm('Do you want to overwrite it?', default=False):
                    console.faint(f'Leaving {target} as is.')
                    continue
            path.write_text(files('nspnp_cli').joinpath(template).read_text())
            console.success(f'Created {target}')
        console.faint('Edit the files, then run `nspnp run --config nspnp.toml`.')
    except OSError as e:
        console.error(f'Error creating the configuration files: {e}')
        raise typer.Exit(ExitCode.CONFIG)
