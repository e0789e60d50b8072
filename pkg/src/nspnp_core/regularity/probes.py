"""Local energy balance tested against a smooth nonnegative bump.

For a suitable solution and every test function ``phi >= 0``

    2 int |grad u|^2 phi  <=  int |u|^2 (phi_t + lap phi)
                              + int (|u|^2 + 2 P) u . grad phi
                              - 2 int T : grad(u phi)

with the Maxwell stress ``T = grad psi (x) grad psi - |grad psi|^2 I / 2``;
smooth solutions satisfy it with equality.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, GridSpec, State
from nspnp_core.fields.operators import (
    diff_center_to_face,
    face_to_center,
    velocity_at_centers,
    velocity_gradient_squared,
)


def _spatial_bump(s: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``f(s) = exp(1 - 1 / (1 - s))`` on ``s < 1`` with its first two derivatives."""
    f = np.zeros_like(s)
    df = np.zeros_like(s)
    d2f = np.zeros_like(s)
    inside = s < 1
    si = s[inside]
    value = np.exp(1.0 - 1.0 / (1.0 - si))
    f[inside] = value
    df[inside] = -value / (1.0 - si) ** 2
    d2f[inside] = value * (2.0 * si - 1.0) / (1.0 - si) ** 4
    return f, df, d2f


def _temporal_bump(tau: float) -> tuple[float, float]:
    """``g(tau) = exp(1 - 1 / (1 - tau^2))`` on ``|tau| < 1`` and its derivative."""
    if abs(tau) >= 1:
        return 0.0, 0.0
    value = float(np.exp(1.0 - 1.0 / (1.0 - tau**2)))
    return value, value * (-2.0 * tau / (1.0 - tau**2) ** 2)


@dataclass(frozen=True)
class LocalEnergyProbe:
    """The bump ``phi(x, t) = f(|x - x0|^2 / R^2) g((t - tc) / tau)``.

    ``phi`` is nonnegative, peaks at one and is supported in
    ``|x - x0| < R``, ``|t - tc| < tau``.
    """

    x0: tuple[float, ...]
    tc: float
    radius: float
    half_duration: float

    def __post_init__(self):
        if self.radius <= 0 or self.half_duration <= 0:
            raise ValueError('The probe radius and duration must be positive.')
        object.__setattr__(self, 'x0', tuple(float(c) for c in self.x0))

    @property
    def t_start(self) -> float:
        return self.tc - self.half_duration

    @property
    def t_end(self) -> float:
        return self.tc + self.half_duration

    def require(self, history: FieldHistory):
        history.require(self.t_start, self.t_end, component='local_energy')
        if history.grid.distance_to_boundary(self.x0) <= self.radius:
            raise CoverageException(
                'The probe support leaves the computed domain.',
                'local_energy',
                {'center': self.x0, 'radius': self.radius},
            )

    def evaluate(self, grid: GridSpec, t: float):
        """``phi``, ``phi_t``, ``grad phi`` and ``lap phi`` at the cell centers."""
        offsets = [c - x for c, x in zip(grid.mesh(), self.x0)]
        r2 = self.radius**2
        s = sum(o**2 for o in offsets) / r2
        f, df, d2f = _spatial_bump(s)
        g, dg = _temporal_bump((t - self.tc) / self.half_duration)
        phi = f * g
        phi_t = f * dg / self.half_duration
        grad = tuple(g * df * 2.0 * o / r2 for o in offsets)
        lap = g * (d2f * 4.0 * s / r2 + df * 2.0 * grid.dims / r2)
        return phi, phi_t, grad, lap


class LocalEnergyBalance(NamedTuple):
    dissipation: float
    """``2 int |grad u|^2 phi``."""

    right_hand_side: float

    residual: float
    """Right hand side minus dissipation."""


def _centered_gradient(values: np.ndarray, grid: GridSpec) -> list[np.ndarray]:
    return list(np.gradient(values, *grid.spacing, edge_order=2))


def _slice_terms(state: State, probe: LocalEnergyProbe) -> tuple[float, float]:
    grid = state.grid
    vol = grid.cell_volume
    phi, phi_t, grad_phi, lap_phi = probe.evaluate(grid, state.time)
    if not np.any(phi) and not np.any(phi_t):
        return 0.0, 0.0

    u = velocity_at_centers(state.u)
    speed2 = sum(c**2 for c in u)
    pressure = state.P.values
    dissipation = 2.0 * float(np.sum(velocity_gradient_squared(state.u) * phi)) * vol

    flux = sum(uc * gc for uc, gc in zip(u, grad_phi))
    rhs = float(np.sum(speed2 * (phi_t + lap_phi) + (speed2 + 2.0 * pressure) * flux)) * vol

    e = [
        face_to_center(diff_center_to_face(state.psi.values, a, grid), a, grid)
        for a in range(grid.dims)
    ]
    half = 0.5 * sum(c**2 for c in e)
    stress_work = 0.0
    for i in range(grid.dims):
        grad_ui_phi = _centered_gradient(u[i] * phi, grid)
        for j in range(grid.dims):
            stress = e[i] * e[j] - (half if i == j else 0.0)
            stress_work += float(np.sum(stress * grad_ui_phi[j]))
    rhs -= 2.0 * stress_work * vol
    return dissipation, rhs


def local_energy_balance(history: FieldHistory, probe: LocalEnergyProbe) -> LocalEnergyBalance:
    """Both sides of the local energy relation, integrated over the probe support.

    Raises
    ------
    CoverageException
        If the history does not cover the probe support
    """
    probe.require(history)
    indices = history.indices_between(probe.t_start, probe.t_end)
    lhs = np.zeros(len(history))
    rhs = np.zeros(len(history))
    for i in indices:
        lhs[i], rhs[i] = _slice_terms(history[i], probe)
    dissipation = history.time_integral(lhs, probe.t_start, probe.t_end)
    right = history.time_integral(rhs, probe.t_start, probe.t_end)
    return LocalEnergyBalance(dissipation, right, right - dissipation)


def local_energy_residual(history: FieldHistory, probe: LocalEnergyProbe) -> float:
    """Right hand side minus left hand side of the local energy relation.

    Nonnegative up to discretisation error, near zero for smooth solutions.
    """
    return local_energy_balance(history, probe).residual
