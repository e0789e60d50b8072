"""Test suite for the picard command."""

from unittest.mock import patch

import pytest
from click.utils import strip_ansi
from typer.testing import CliRunner

from nspnp_cli.commands.picard import app
from nspnp_cli.models import ExitCode
from nspnp_core.exceptions import MaxItersExceededException
from nspnp_core.fixed_point import PicardRecord
from nspnp_core.services import ReportService

RUN_TOML = """
[grid]
dims = 2
cells = [16, 16]
lengths = [1.0, 1.0]

[time]
t_end = 0.2
dt = 0.025
blocks = 2

[initial]
preset = "taylor_green"
"""


@pytest.fixture
def runner():
    """Fixture providing a CLI runner."""
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / 'run.toml'
    path.write_text(RUN_TOML)
    return path


def test_charge_free_fixed_point(runner, tmp_path, config_file):
    out = tmp_path / 'picard'

    result = runner.invoke(app, ['--config', str(config_file), '--out', str(out)])

    output = strip_ansi(result.stdout)
    assert result.exit_code == 0
    assert 'Fixed point study' in output
    assert 'Ratio history' in output
    assert 'Fixed point on T=0.2' in output
    assert ReportService.read_json(out / 'picard.json')['iterations'] == 1
    assert len(ReportService.read_csv(out / 'picard.csv')) == 1


def test_missing_configuration(runner, tmp_path):
    result = runner.invoke(app, ['--config', str(tmp_path / 'absent.toml')])

    assert result.exit_code == ExitCode.CONFIG


def test_exhausted_budget(runner, tmp_path, config_file):
    error = MaxItersExceededException(
        'No fixed point within 1 iterations.',
        'fixed_point',
        records=[PicardRecord(1, float('nan'), 0.5, 0.2)],
    )
    with patch('nspnp_cli.commands.picard.Nspnp.picard') as mock_picard:
        mock_picard.side_effect = error

        result = runner.invoke(app, ['--config', str(config_file), '--out', str(tmp_path)])

    assert result.exit_code == ExitCode.NUMERICAL
    assert 'Iteration budget exhausted' in strip_ansi(result.stdout)
