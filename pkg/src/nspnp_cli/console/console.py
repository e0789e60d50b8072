"""
Themed console for the nspnp commands.

Status lines, tables of ledger and scan values, and a progress bar for the
time stepping. Colors follow the Flexoki palette.
"""

import os
from contextlib import contextmanager
from typing import Iterable, Optional, Sequence

from rich.console import Console as RichConsole
from rich.panel import Panel
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    TextColumn,
    TimeElapsedColumn,
)
from rich.style import Style
from rich.table import Table
from rich.text import Text
from rich.theme import Theme

from nspnp_core.models.config import NspnpConfig

PALETTE_DARK = {
    'ui': '#343331',
    'ui_2': '#403E3C',
    'tx_3': '#B7B5AC',
    'tx_2': '#CECDC3',
    'tx': '#E6E4D9',
    'red': '#D14D41',
    'orange': '#DA702C',
    'yellow': '#D0A215',
    'green': '#879A39',
    'cyan': '#3AA99F',
    'blue': '#4385BE',
    'magenta': '#CE5D97',
}

PALETTE_LIGHT = {
    'ui': '#E6E4D9',
    'ui_2': '#DAD8CE',
    'tx_3': '#6F6E69',
    'tx_2': '#403E3C',
    'tx': '#100F0F',
    'red': '#AF3029',
    'orange': '#BC5215',
    'yellow': '#AD8301',
    'green': '#66800B',
    'cyan': '#24837B',
    'blue': '#205EA6',
    'magenta': '#A02F6F',
}


def format_number(value) -> str:
    """Compact rendering of ledger and report values."""
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f'{value:.6g}'
    return str(value)


class Console:
    """
    A themed console wrapper.

    The theme comes from ``NSPNP_THEME`` when set, otherwise from the
    ``COLORFGBG`` variable some terminals export, and defaults to dark.
    """

    @staticmethod
    def detect_theme(config: Optional[NspnpConfig] = None) -> str:
        if config is not None and config.theme is not None:
            return config.theme

        # "foreground;background", backgrounds 7 and 15 are light
        colorfgbg = os.environ.get('COLORFGBG', '')
        background = colorfgbg.split(';')[-1] if ';' in colorfgbg else ''
        if background in ('7', '15'):
            return 'light'
        return 'dark'

    def __init__(self, theme_mode: Optional[str] = None, config: Optional[NspnpConfig] = None):
        if theme_mode is None:
            theme_mode = self.detect_theme(config if config is not None else NspnpConfig())

        self.theme_mode = theme_mode
        self.COLORS = PALETTE_LIGHT if theme_mode == 'light' else PALETTE_DARK
        c = self.COLORS
        self.theme = Theme(
            {
                'default': c['tx'],
                'muted': c['tx_2'],
                'faint': c['tx_3'],
                'success': f'bold {c["green"]}',
                'info': c['cyan'],
                'warning': f'bold {c["orange"]}',
                'error': f'bold {c["red"]}',
                'highlight': f'bold {c["yellow"]}',
                'accent': c['blue'],
                'flagged': f'bold {c["magenta"]}',
                'repr.number': Style(color=c['blue'], bold=True),
                'bar.complete': c['blue'],
                'bar.finished': c['blue'],
                'bar.pulse': c['blue'],
                'progress.description': c['tx_2'],
                'progress.elapsed': c['tx_2'],
                'table.header': Style(color=c['magenta'], bold=True),
            }
        )
        self.console = RichConsole(theme=self.theme)

    def print(self, *args, style=None, **kwargs):
        self.console.print(*args, style=style, **kwargs)

    def _status(self, message: str, icon: str, style: str, panel: bool):
        line = Table.grid(padding=(0, 1))
        line.add_column(width=1)
        line.add_column()
        line.add_row(Text(icon, style=style), Text(message))
        if panel:
            self.console.print(Panel(line, border_style=style))
        else:
            self.print(line)

    def success(self, message: str, panel: bool = False):
        self._status(message, '✓', 'success', panel)

    def info(self, message: str, panel: bool = False):
        self._status(message, 'ℹ', 'info', panel)

    def warning(self, message: str, panel: bool = False):
        self._status(message, '⚠', 'warning', panel)

    def error(self, message: str, panel: bool = False):
        self._status(message, '✗', 'error', panel)

    def muted(self, message: str):
        self.print(message, style='muted')

    def faint(self, message: str):
        self.print(message, style='faint')

    def highlight(self, message: str):
        self.print(message, style='highlight')

    def banner(self):
        """Print the program name and its tagline."""
        self.action('[bold]nspnp[/bold]', style='accent')
        self.print('[faint][italic]Charged fluids, cylinder by cylinder.[/italic][/faint]')
        self.newline()

    def action(self, message: str, style: str = 'faint', space_after: bool = True):
        self.print(f'[{style}]▣[/{style}] {message}')
        if space_after:
            self.newline()

    def table(
        self,
        columns: Sequence[str],
        rows: Iterable[Sequence],
        title: Optional[str] = None,
    ):
        """Print rows of values under the given column headers."""
        table = Table(title=title, title_justify='left', border_style=self.COLORS['ui_2'])
        for column in columns:
            table.add_column(column, justify='right' if column != columns[0] else 'left')
        for row in rows:
            table.add_row(*(format_number(v) for v in row))
        self.console.print(table)

    def pairs(self, values: dict, title: Optional[str] = None):
        """Print a two column table of named values."""
        self.table(('name', 'value'), sorted(values.items()), title)

    @contextmanager
    def progress(self, description: str = 'Working...'):
        """
        Context manager for a progress bar.

        Usage:
            with console.progress('Time stepping') as progress:
                task = progress.add_task('', total=steps)
                progress.update(task, advance=1)
        """
        progress = Progress(
            TextColumn('[progress.description]{task.description}'),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=self.console,
            transient=True,
        )
        with progress:
            yield progress

    @contextmanager
    def spinner(self, message: str = 'Working...'):
        with self.console.status(f'[info]{message}[/info]', spinner='dots'):
            yield

    def newline(self, count: int = 1):
        self.console.print('\n' * (count - 1))
