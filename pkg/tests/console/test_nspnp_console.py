"""Unit tests for the themed console."""

import os
from io import StringIO
from unittest.mock import patch

import pytest
from rich.console import Console as RichConsole

from nspnp_cli.console.console import PALETTE_DARK, PALETTE_LIGHT, Console, format_number
from nspnp_core.models.config import NspnpConfig


@pytest.fixture
def console():
    """Console writing to a buffer instead of the terminal."""
    instance = Console(theme_mode='dark')
    instance.console = RichConsole(
        file=StringIO(), theme=instance.theme, width=100, color_system=None
    )
    return instance


def output_of(console: Console) -> str:
    return console.console.file.getvalue()


class TestThemeDetection:
    def test_config_theme(self):
        assert Console.detect_theme(NspnpConfig(theme='light')) == 'light'
        assert Console.detect_theme(NspnpConfig(theme='dark')) == 'dark'

    @patch.dict(os.environ, {'COLORFGBG': '0;15'})
    def test_light_background(self):
        assert Console.detect_theme() == 'light'

    @patch.dict(os.environ, {'COLORFGBG': '15;0'})
    def test_dark_background(self):
        assert Console.detect_theme() == 'dark'

    @patch.dict(os.environ, {}, clear=True)
    def test_default_dark(self):
        assert Console.detect_theme() == 'dark'

    def test_config_overrides_environment(self):
        with patch.dict(os.environ, {'COLORFGBG': '0;7'}):
            assert Console.detect_theme(NspnpConfig(theme='dark')) == 'dark'

    def test_palette(self):
        assert Console(theme_mode='light').COLORS is PALETTE_LIGHT
        assert Console(theme_mode='dark').COLORS is PALETTE_DARK


class TestFormatNumber:
    @pytest.mark.parametrize(
        'value, expected',
        [
            (None, '-'),
            (True, 'yes'),
            (False, 'no'),
            (12, '12'),
            (0.1234567891, '0.123457'),
            (1e-12, '1e-12'),
            (float('nan'), 'nan'),
            ('(0.5, 0.5)', '(0.5, 0.5)'),
        ],
    )
    def test_format(self, value, expected):
        assert format_number(value) == expected


class TestOutput:
    def test_status_lines(self, console):
        console.success('done')
        console.warning('careful')
        console.error('failed')
        console.info('note')

        lines = output_of(console).splitlines()
        assert lines[0].startswith('✓') and 'done' in lines[0]
        assert lines[1].startswith('⚠') and 'careful' in lines[1]
        assert lines[2].startswith('✗') and 'failed' in lines[2]
        assert lines[3].startswith('ℹ') and 'note' in lines[3]

    def test_action(self, console):
        console.action('Coupled run', space_after=False)

        assert output_of(console) == '▣ Coupled run\n'

    def test_table(self, console):
        console.table(('t', 'kinetic'), [(0.0, 1.0), (0.1, 0.95)], title='Ledger')

        output = output_of(console)
        assert 'Ledger' in output
        assert 'kinetic' in output
        assert '0.95' in output

    def test_pairs_are_sorted(self, console):
        console.pairs({'skipped': 12, 'centers': 4})

        output = output_of(console)
        assert output.index('centers') < output.index('skipped')

    def test_banner(self, console):
        console.banner()

        assert 'nspnp' in output_of(console)
        assert 'Charged fluids, cylinder by cylinder.' in output_of(console)

    def test_progress(self, console):
        with console.progress('Time stepping') as progress:
            task = progress.add_task('', total=2)
            progress.update(task, advance=2)

        assert progress.tasks[0].completed == 2

    def test_spinner(self, console):
        with console.spinner('Scanning'):
            console.print('inside')

        assert 'inside' in output_of(console)
