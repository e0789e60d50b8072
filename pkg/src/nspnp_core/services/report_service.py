"""Writers and readers for the run artifacts (CSV ledgers, JSON reports, manifest)."""

import csv
import hashlib
import json
from pathlib import Path
from typing import Any, Iterable, NamedTuple, Optional, Sequence

from pydantic import BaseModel

from nspnp_core.models.reports import Manifest
from nspnp_core.simulation.ledger import LEDGER_COLUMNS

RATIO_COLUMNS = ('iter', 'ratio', 'yt_increment', 'T')

MANIFEST_NAME = 'manifest.json'


class ReportService:
    """Serialise ledgers, ratio histories and reports.

    All methods are static; the class acts as a namespace. Outputs are
    deterministic: the same inputs always produce the same bytes.
    """

    @staticmethod
    def write_csv(
        rows: Iterable[Sequence[Any]], columns: Sequence[str], path: str | Path
    ) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', newline='', encoding='utf-8') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(columns)
            for row in rows:
                writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
        return path

    @staticmethod
    def read_csv(path: str | Path) -> list[dict[str, float]]:
        with Path(path).open(newline='', encoding='utf-8') as handle:
            return [
                {key: float(value) for key, value in row.items()}
                for row in csv.DictReader(handle)
            ]

    @staticmethod
    def write_ledger(rows: Sequence[NamedTuple], path: str | Path) -> Path:
        return ReportService.write_csv(rows, LEDGER_COLUMNS, path)

    @staticmethod
    def write_ratio_history(records: Sequence[NamedTuple], path: str | Path) -> Path:
        return ReportService.write_csv(
            ((r.iter, r.ratio, r.yt_increment, r.T) for r in records), RATIO_COLUMNS, path
        )

    @staticmethod
    def write_json(document: BaseModel, path: str | Path) -> Path:
        """Write a report model; NaN and infinite floats become ``null``."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(document.model_dump_json(indent=2) + '\n', encoding='utf-8')
        return path

    @staticmethod
    def read_json(path: str | Path) -> Any:
        return json.loads(Path(path).read_text(encoding='utf-8'))

    @staticmethod
    def sha256(path: str | Path) -> str:
        digest = hashlib.sha256()
        with Path(path).open('rb') as handle:
            for chunk in iter(lambda: handle.read(1 << 20), b''):
                digest.update(chunk)
        return digest.hexdigest()

    @staticmethod
    def write_manifest(
        directory: str | Path,
        config_hash: str,
        outputs: Iterable[str | Path],
        seed: Optional[int] = None,
        snapshots: Optional[int] = None,
        ledger: Optional[dict[str, float]] = None,
    ) -> Path:
        """Record the configuration hash and the sha256 of every output file.

        Paths are stored relative to ``directory``.
        """
        directory = Path(directory)
        hashes = {}
        for output in sorted(Path(o) for o in outputs):
            try:
                key = output.relative_to(directory).as_posix()
            except ValueError:
                key = output.name
            hashes[key] = ReportService.sha256(output)
        manifest = Manifest(
            config_sha256=config_hash,
            outputs=hashes,
            seed=seed,
            snapshots=snapshots,
            ledger=ledger,
        )
        return ReportService.write_json(manifest, directory / MANIFEST_NAME)
