"""Test suite for the env command."""

from pathlib import Path
from unittest.mock import patch

import pytest
from click.utils import strip_ansi
from typer.testing import CliRunner

from nspnp_cli.commands.env import app


@pytest.fixture
def runner():
    """Fixture providing a CLI runner."""
    return CliRunner()


@pytest.fixture
def mock_resources():
    """Fixture providing a mock for the packaged templates."""
    with patch('nspnp_cli.commands.env.files') as mock_files:
        mock_files.return_value.joinpath.return_value.read_text.return_value = (
            'NSPNP_LOGGING_LEVEL=20\n'
        )
        yield mock_files


def test_env_command_creates_both_files(runner, mock_resources):
    with runner.isolated_filesystem():
        result = runner.invoke(app)

        output = strip_ansi(result.stdout)
        assert result.exit_code == 0
        assert 'Created .env' in output
        assert 'Created nspnp.toml' in output
        assert (Path.cwd() / '.env').read_text() == 'NSPNP_LOGGING_LEVEL=20\n'
        assert (Path.cwd() / 'nspnp.toml').exists()

    mock_resources.return_value.joinpath.assert_any_call('.env.example')
    mock_resources.return_value.joinpath.assert_any_call('nspnp.example.toml')


def test_env_command_keeps_existing_files(runner, mock_resources):
    with runner.isolated_filesystem():
        (Path.cwd() / '.env').write_text('EXISTING=true')
        (Path.cwd() / 'nspnp.toml').write_text('seed = 1')

        result = runner.invoke(app, input='n\nn\n')

        output = strip_ansi(result.stdout)
        assert result.exit_code == 0
        assert '.env already exists' in output
        assert 'Do you want to overwrite it?' in output
        assert 'Leaving .env as is.' in output
        assert (Path.cwd() / '.env').read_text() == 'EXISTING=true'
        assert (Path.cwd() / 'nspnp.toml').read_text() == 'seed = 1'


def test_env_command_overwrites_after_confirmation(runner, mock_resources):
    with runner.isolated_filesystem():
        (Path.cwd() / '.env').write_text('EXISTING=true')

        result = runner.invoke(app, input='y\n')

        assert result.exit_code == 0
        assert (Path.cwd() / '.env').read_text() == 'NSPNP_LOGGING_LEVEL=20\n'


def test_env_command_force(runner, mock_resources):
    with runner.isolated_filesystem():
        (Path.cwd() / '.env').write_text('EXISTING=true')

        result = runner.invoke(app, ['--force'])

        assert result.exit_code == 0
        assert 'already exists' not in strip_ansi(result.stdout)
        assert (Path.cwd() / '.env').read_text() == 'NSPNP_LOGGING_LEVEL=20\n'


def test_env_command_reports_write_errors(runner, mock_resources):
    mock_resources.return_value.joinpath.return_value.read_text.side_effect = OSError(
        'disk full'
    )
    with runner.isolated_filesystem():
        result = runner.invoke(app)

    assert result.exit_code == 1
    assert 'Error creating the configuration files: disk full' in strip_ansi(result.stdout)


def test_packaged_templates_exist():
    root = Path(__file__).parents[2] / 'src' / 'nspnp_cli'

    assert (root / '.env.example').is_file()
    assert 'preset' in (root / 'nspnp.example.toml').read_text()
