"""Test suite for the report command."""

import pytest
from click.utils import strip_ansi
from typer.testing import CliRunner

from nspnp_cli.commands.report import app
from nspnp_cli.models import ExitCode
from nspnp_core.fixed_point import PicardRecord
from nspnp_core.models import HorizonSummary, PicardReport
from nspnp_core.regularity import AnalysisReport, AnalysisSummary
from nspnp_core.services import ReportService
from nspnp_core.simulation import LedgerRow


@pytest.fixture
def runner():
    """Fixture providing a CLI runner."""
    return CliRunner()


@pytest.fixture
def directory(tmp_path):
    ledger = ReportService.write_ledger(
        [
            LedgerRow(0.0, 1.0, 0.5, 0.0, 0.0, 0.9, 0.8, 1.0, 1.0, 0.0),
            LedgerRow(0.1, 0.9, 0.4, 0.15, -0.05, 0.9, 0.8, 1.0, 1.0, 1e-12),
        ],
        tmp_path / 'ledger.csv',
    )
    ReportService.write_manifest(
        tmp_path, 'abcdef0123456789', [ledger], seed=4, ledger={'E1': 1.5}
    )
    ReportService.write_json(
        PicardReport(
            iterations=3,
            converged_T=0.2,
            final_ratio=0.01,
            horizon=HorizonSummary(steps=8, T=0.2, ratio=0.0, target=0.5),
        ),
        tmp_path / 'picard.json',
    )
    ReportService.write_ratio_history(
        [PicardRecord(1, float('nan'), 0.1, 0.2)], tmp_path / 'picard.csv'
    )
    return tmp_path


def test_report_prints_every_summary(runner, directory):
    result = runner.invoke(app, [str(directory)])

    output = strip_ansi(result.stdout)
    assert result.exit_code == 0
    assert 'config abcdef012345, seed 4, 1 files' in output
    assert 'Energy summary' in output
    assert 'Ledger (2 rows)' in output
    assert 'Fixed point' in output
    assert 'Regularity scan' not in output


def test_report_includes_the_scan(runner, directory):
    ReportService.write_json(
        AnalysisReport(
            summary=AnalysisSummary(
                centers=4, flagged=0, skipped=12, epsilon0=0.1, epsilon1=0.1, radii=[0.25]
            )
        ),
        directory / 'analysis.json',
    )

    result = runner.invoke(app, [str(directory)])

    assert result.exit_code == 0
    assert 'Regularity scan' in strip_ansi(result.stdout)


def test_empty_directory(runner, tmp_path):
    result = runner.invoke(app, [str(tmp_path)])

    assert result.exit_code == ExitCode.CONFIG
    assert 'No nspnp outputs found' in strip_ansi(result.stdout)
