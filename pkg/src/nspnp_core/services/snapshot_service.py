"""Binary snapshot format.

A snapshot holds one State, little endian throughout::

    magic   b'NSPNP1\\0'
    u32     dims
    u32     cells, one per axis
    f64     lengths, one per axis
    u8      boundary code (0 periodic, 1 wall)
    f64     time
    f64[]   velocity components in face layout, then P, n+, n-, psi
"""

import struct
from pathlib import Path
from typing import Iterable

import numpy as np

from nspnp_core.exceptions import SnapshotFormatException
from nspnp_core.fields import FieldHistory, GridSpec, ScalarField, State, VectorField

MAGIC = b'NSPNP1\x00'

MAGIC_PREFIX = b'NSPNP'

SUFFIX = '.nspnp'

_F64 = np.dtype('<f8')


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int, section: str) -> bytes:
        end = self.offset + size
        if end > len(self.data):
            raise SnapshotFormatException(
                f'The file ends inside section "{section}".',
                'snapshot',
                {'needed': size, 'available': len(self.data) - self.offset},
                section=section,
                offset=self.offset,
            )
        chunk = self.data[self.offset : end]
        self.offset = end
        return chunk

    def unpack(self, fmt: str, section: str) -> tuple:
        return struct.unpack(fmt, self.take(struct.calcsize(fmt), section))

    def array(self, shape: tuple[int, ...], section: str) -> np.ndarray:
        count = int(np.prod(shape))
        raw = self.take(count * _F64.itemsize, section)
        return np.frombuffer(raw, dtype=_F64).reshape(shape)


class SnapshotService:
    """Encode, decode and store snapshots.

    All methods are static; the class acts as a namespace.
    """

    @staticmethod
    def snapshot_name(index: int) -> str:
        return f'snapshot_{index:06d}{SUFFIX}'

    @staticmethod
    def encode(state: State) -> bytes:
        grid = state.grid
        parts = [
            MAGIC,
            struct.pack('<I', grid.dims),
            struct.pack(f'<{grid.dims}I', *grid.cells),
            struct.pack(f'<{grid.dims}d', *grid.lengths),
            struct.pack('<B', grid.bc_code),
            struct.pack('<d', state.time),
        ]
        arrays = [*state.u.components, state.P.values, state.n_plus.values]
        arrays += [state.n_minus.values, state.psi.values]
        parts.extend(np.ascontiguousarray(a, dtype=_F64).tobytes() for a in arrays)
        return b''.join(parts)

    @staticmethod
    def decode(data: bytes) -> State:
        """Decode one snapshot.

        Raises
        ------
        SnapshotFormatException
            On a wrong magic or version, a truncated section, trailing
            bytes or an invalid header; the exception names the section
            and its byte offset
        """
        reader = _Reader(data)
        magic = reader.take(len(MAGIC), 'magic')
        if magic != MAGIC:
            reason = (
                'Unsupported snapshot version.'
                if magic.startswith(MAGIC_PREFIX)
                else 'Not a snapshot file.'
            )
            raise SnapshotFormatException(
                reason, 'snapshot', {'magic': magic.hex()}, section='magic', offset=0
            )

        start = reader.offset
        (dims,) = reader.unpack('<I', 'dims')
        if dims not in (2, 3):
            raise SnapshotFormatException(
                f'Unsupported dimension {dims}.', 'snapshot', section='dims', offset=start
            )
        cells = reader.unpack(f'<{dims}I', 'cells')
        lengths = reader.unpack(f'<{dims}d', 'lengths')
        start = reader.offset
        (code,) = reader.unpack('<B', 'bc')
        (time,) = reader.unpack('<d', 'time')
        try:
            grid = GridSpec(
                dims=dims, cells=cells, lengths=lengths, bc=GridSpec.bc_from_code(code)
            )
        except ValueError as ex:
            raise SnapshotFormatException(
                f'Invalid grid header: {ex}', 'snapshot', section='header', offset=start
            ) from ex

        components = tuple(
            reader.array(grid.face_shape(a), f'u[{a}]') for a in range(dims)
        )
        scalars = {
            name: reader.array(grid.shape, name)
            for name in ('P', 'n_plus', 'n_minus', 'psi')
        }
        if reader.offset != len(data):
            raise SnapshotFormatException(
                'Unexpected bytes after the last section.',
                'snapshot',
                {'trailing': len(data) - reader.offset},
                section='trailing',
                offset=reader.offset,
            )
        try:
            return State(
                time=time,
                u=VectorField(grid, components),
                **{name: ScalarField(grid, values) for name, values in scalars.items()},
            )
        except ValueError as ex:
            raise SnapshotFormatException(
                str(ex), 'snapshot', section='arrays', offset=len(data)
            ) from ex

    @staticmethod
    def write(state: State, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(SnapshotService.encode(state))
        return path

    @staticmethod
    def read(path: str | Path) -> State:
        return SnapshotService.decode(Path(path).read_bytes())

    @staticmethod
    def list_snapshots(directory: str | Path) -> list[Path]:
        return sorted(Path(directory).glob(f'snapshot_*{SUFFIX}'))

    @staticmethod
    def checkpoint(states: Iterable[State], directory: str | Path) -> list[Path]:
        """Write every state to ``directory`` as numbered snapshot files."""
        directory = Path(directory)
        return [
            SnapshotService.write(state, directory / SnapshotService.snapshot_name(i))
            for i, state in enumerate(states)
        ]

    @staticmethod
    def restore(directory: str | Path) -> FieldHistory:
        """Read the snapshots of ``directory`` back into a history.

        Raises
        ------
        SnapshotFormatException
            If the directory holds no snapshots or one of them is invalid
        """
        paths = SnapshotService.list_snapshots(directory)
        if not paths:
            raise SnapshotFormatException(
                f'No snapshots found in {directory}.', 'snapshot', section='directory'
            )
        history = FieldHistory()
        for path in paths:
            try:
                history.append(SnapshotService.read(path))
            except SnapshotFormatException as ex:
                ex.details = {**ex.details, 'file': str(path)}
                raise
        return history
