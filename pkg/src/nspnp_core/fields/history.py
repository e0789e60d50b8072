import threading
from collections import deque
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Optional

import numpy as np

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields.densities import state_magnitude
from nspnp_core.fields.fields import ScalarField, VectorField
from nspnp_core.fields.grid import GridSpec

TIME_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class State:
    """The quintuple (u, P, n+, n-, psi) at one time."""

    time: float
    u: VectorField
    P: ScalarField
    n_plus: ScalarField
    n_minus: ScalarField
    psi: ScalarField

    @property
    def grid(self) -> GridSpec:
        return self.P.grid

    @classmethod
    def zeros(cls, grid: GridSpec, time: float = 0.0) -> 'State':
        zero = ScalarField.zeros(grid)
        return cls(float(time), VectorField.zeros(grid), zero, zero, zero, zero)

    def replace(self, **changes) -> 'State':
        return replace(self, **changes)


def parabolic_distance(x, t: float, y, s: float) -> float:
    """``max(|x - y|, sqrt(|t - s|))``."""
    spatial = float(np.linalg.norm(np.asarray(x, dtype=np.float64) - np.asarray(y)))
    return max(spatial, float(np.sqrt(abs(t - s))))


@dataclass(frozen=True)
class ParabolicCylinder:
    """``Q_r(x0, t0) = B_r(x0) x (t0 - r^2, t0]``."""

    x0: tuple[float, ...]
    t0: float
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError('Cylinder radius must be positive.')
        object.__setattr__(self, 'x0', tuple(float(c) for c in self.x0))
        object.__setattr__(self, 't0', float(self.t0))
        object.__setattr__(self, 'radius', float(self.radius))

    @property
    def t_start(self) -> float:
        return self.t0 - self.radius**2

    def distance(self, other: 'ParabolicCylinder') -> float:
        return parabolic_distance(self.x0, self.t0, other.x0, other.t0)

    def scaled(self, factor: float) -> 'ParabolicCylinder':
        return ParabolicCylinder(self.x0, self.t0, self.radius * factor)

    def with_radius(self, radius: float) -> 'ParabolicCylinder':
        return ParabolicCylinder(self.x0, self.t0, radius)

    def is_interior(self, grid: GridSpec) -> bool:
        """The ball stays strictly inside the box."""
        return grid.distance_to_boundary(self.x0) > self.radius


class FieldHistory:
    """Time ordered States with uniform spacing.

    With ``max_length`` the history behaves as a ring buffer and drops the
    oldest slices. Cell centered magnitudes requested through ``density``
    are cached until the next append.
    """

    def __init__(self, states: Iterable[State] = (), max_length: Optional[int] = None):
        self._states: deque[State] = deque(maxlen=max_length)
        self._dt: Optional[float] = None
        self._cache: dict[tuple[str, float], np.ndarray] = {}
        self._lock = threading.Lock()
        for state in states:
            self.append(state)

    def append(self, state: State) -> 'FieldHistory':
        if self._states:
            last = self._states[-1]
            if state.grid != last.grid:
                raise ValueError('All slices of a history must share one grid.')
            step = state.time - last.time
            if step <= 0:
                raise ValueError(
                    f'History times must increase, received {state.time} after {last.time}.'
                )
            if self._dt is None:
                self._dt = step
            elif abs(step - self._dt) > 1e-6 * self._dt:
                raise ValueError(
                    f'History spacing must be uniform: expected {self._dt}, received {step}.'
                )
        self._states.append(state)
        with self._lock:
            self._cache.clear()
        return self

    def __len__(self) -> int:
        return len(self._states)

    def __iter__(self) -> Iterator[State]:
        return iter(list(self._states))

    def __getitem__(self, index: int) -> State:
        return self._states[index]

    @property
    def states(self) -> list[State]:
        return list(self._states)

    @property
    def grid(self) -> GridSpec:
        if not self._states:
            raise CoverageException('The history is empty.', 'history')
        return self._states[0].grid

    @property
    def dt(self) -> Optional[float]:
        if len(self._states) < 2:
            return None
        return (self._states[-1].time - self._states[0].time) / (len(self._states) - 1)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self._states])

    @property
    def t_first(self) -> float:
        return self[0].time

    @property
    def t_last(self) -> float:
        return self[-1].time

    def _tol(self) -> float:
        dt = self.dt
        return TIME_RTOL * (dt if dt else 1.0)

    def covers(self, t_start: float, t_end: float) -> bool:
        if not self._states:
            return False
        tol = self._tol()
        return (
            self._states[0].time <= t_start + tol
            and self._states[-1].time >= t_end - tol
        )

    def require(self, t_start: float, t_end: float, component: str = 'history'):
        """Raise CoverageException unless the window is covered."""
        if not self.covers(t_start, t_end):
            available = (
                (self._states[0].time, self._states[-1].time) if self._states else None
            )
            raise CoverageException(
                f'History does not cover [{t_start}, {t_end}].',
                component,
                {'requested': (t_start, t_end), 'available': available},
            )

    def index_of(self, t: float) -> int:
        """Index of the slice stored at time ``t``."""
        if not self._states:
            raise CoverageException(f'No slice at t={t}.', 'history')
        t0 = self._states[0].time
        dt = self.dt or 1.0
        index = int(round((t - t0) / dt))
        if 0 <= index < len(self._states):
            if abs(self._states[index].time - t) <= self._tol() * 10:
                return index
        raise CoverageException(
            f'No slice at t={t}.',
            'history',
            {'available': (t0, self._states[-1].time), 'dt': self.dt},
        )

    def at(self, t: float) -> State:
        return self._states[self.index_of(t)]

    def indices_between(self, t_start: float, t_end: float, open_start: bool = False):
        """Indices of slices with ``t_start <= t <= t_end``."""
        tol = self._tol()
        times = self.times
        if open_start:
            mask = (times > t_start + tol) & (times <= t_end + tol)
        else:
            mask = (times >= t_start - tol) & (times <= t_end + tol)
        return np.nonzero(mask)[0]

    def until(self, t: float) -> 'FieldHistory':
        """A new history with the slices up to and including ``t``."""
        tol = self._tol()
        return FieldHistory([s for s in self._states if s.time <= t + tol])

    def density(self, selector: str, p: float = 1.0) -> np.ndarray:
        """Stack of ``|f|^p`` over all slices, shape ``(slices, *grid.shape)``."""
        key = (selector, float(p))
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        if not self._states:
            raise CoverageException('The history is empty.', 'history')
        stack = np.stack([state_magnitude(s, selector) ** p for s in self._states])
        stack.setflags(write=False)
        with self._lock:
            self._cache[key] = stack
        return stack

    def time_integral(self, samples: np.ndarray, t_start: float, t_end: float) -> float:
        """Integrate per-slice samples over ``[t_start, t_end]``.

        The samples are interpolated linearly in time, so window ends falling
        between slices are handled exactly for piecewise linear data.
        """
        self.require(t_start, t_end)
        if t_end <= t_start:
            return 0.0
        times = self.times
        tol = self._tol()
        inner = times[(times > t_start + tol) & (times < t_end - tol)]
        nodes = np.concatenate([[t_start], inner, [t_end]])
        values = np.interp(nodes, times, samples)
        return float(np.sum(0.5 * (values[1:] + values[:-1]) * np.diff(nodes)))
