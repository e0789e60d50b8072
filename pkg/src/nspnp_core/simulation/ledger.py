"""Energy bookkeeping of a coupled run.

With ``rho = n+ - n-`` the computed solution satisfies

    d/dt (int |u|^2 + int |grad psi|^2) + 2 D = 2 int rho (w - u) . grad psi
    D = int |grad u|^2 + int rho^2 + int (n+ + n-) |grad psi|^2

so in direct mode (``w = u``) kinetic plus electrostatic energy plus the
cumulative dissipation never exceed the initial energy. The right hand
side is the drift work of the mollified system, tracked separately.
"""

from typing import NamedTuple, Optional

import numpy as np

from nspnp_core.fields import State, VectorField, dirichlet_energy, divergence, gradient
from nspnp_core.fields.operators import center_to_face


class LedgerRow(NamedTuple):
    t: float
    kinetic: float
    electrostatic: float
    dissipation_cum: float
    global_ei_residual: float
    min_nplus: float
    min_nminus: float
    mass_nplus: float
    mass_nminus: float
    div_u_l2: float


LEDGER_COLUMNS = LedgerRow._fields


def electrostatic_energy(state: State) -> float:
    grad = gradient(state.psi)
    return grad.dot(grad)


def dissipation_rate(state: State) -> float:
    """``int |grad u|^2 + int rho^2 + int (n+ + n-) |grad psi|^2``."""
    grid = state.grid
    rho = state.n_plus.values - state.n_minus.values
    total = state.n_plus.values + state.n_minus.values
    grad = gradient(state.psi)
    electric = sum(
        float(np.sum(center_to_face(total, a, grid) * grad[a] ** 2))
        for a in range(grid.dims)
    )
    return (
        dirichlet_energy(state.u)
        + float(np.sum(rho**2)) * grid.cell_volume
        + electric * grid.cell_volume
    )


def drift_work_rate(state: State, w: VectorField) -> float:
    """``2 int rho (w - u) . grad psi``."""
    grid = state.grid
    rho = state.n_plus.values - state.n_minus.values
    grad = gradient(state.psi)
    mismatch = w - state.u
    return 2.0 * grid.cell_volume * sum(
        float(np.sum(center_to_face(rho, a, grid) * mismatch[a] * grad[a]))
        for a in range(grid.dims)
    )


class EnergyLedger:
    """Accumulates the energy ledger along a run.

    ``record`` is called with every computed state; time integrals use the
    right end point of each step. Rows are kept only for the states
    recorded with ``emit=True``.
    """

    def __init__(self):
        self.rows: list[LedgerRow] = []
        self.initial_energy: Optional[float] = None
        self.dissipation_cum = 0.0
        self.drift_work_cum = 0.0
        self.E1 = 0.0
        self.E2 = 0.0
        self.pressure_integral = 0.0
        self.charge_imbalance = 0.0
        self._last_time: Optional[float] = None

    def record(self, state: State, w: Optional[VectorField] = None, emit: bool = True) -> LedgerRow:
        grid = state.grid
        kinetic = state.u.dot(state.u)
        electrostatic = electrostatic_energy(state)
        energy = kinetic + electrostatic

        if self._last_time is None:
            self.initial_energy = energy
        else:
            dt = state.time - self._last_time
            rho = state.n_plus.values - state.n_minus.values
            self.dissipation_cum += 2.0 * dt * dissipation_rate(state)
            self.E2 += dt * (
                dirichlet_energy(state.u) + float(np.sum(rho**2)) * grid.cell_volume
            )
            self.pressure_integral += (
                dt * float(np.sum(np.abs(state.P.values) ** (5.0 / 3.0))) * grid.cell_volume
            )
            if w is not None:
                self.drift_work_cum += dt * drift_work_rate(state, w)
        self._last_time = state.time

        self.E1 = max(self.E1, energy)
        self.charge_imbalance = max(
            self.charge_imbalance, abs(state.n_plus.integral() - state.n_minus.integral())
        )
        div = divergence(state.u).values
        row = LedgerRow(
            t=state.time,
            kinetic=kinetic,
            electrostatic=electrostatic,
            dissipation_cum=self.dissipation_cum,
            global_ei_residual=energy + self.dissipation_cum - self.initial_energy,
            min_nplus=state.n_plus.min(),
            min_nminus=state.n_minus.min(),
            mass_nplus=state.n_plus.integral(),
            mass_nminus=state.n_minus.integral(),
            div_u_l2=float(np.sqrt(np.sum(div**2) * grid.cell_volume)),
        )
        if emit:
            self.rows.append(row)
        return row

    @property
    def pressure_norm(self) -> float:
        """``||P||`` in ``L^{5/3}`` over the elapsed space-time."""
        return self.pressure_integral ** (3.0 / 5.0)

    @property
    def max_residual(self) -> float:
        return max((r.global_ei_residual for r in self.rows), default=0.0)

    def is_monotone(self) -> bool:
        """Whether the cumulative dissipation never decreases across the rows."""
        values = [r.dissipation_cum for r in self.rows]
        return all(b >= a for a, b in zip(values, values[1:]))

    def summary(self) -> dict:
        return {
            'initial_energy': self.initial_energy,
            'dissipation_cum': self.dissipation_cum,
            'max_global_ei_residual': self.max_residual,
            'drift_work_cum': self.drift_work_cum,
            'E1': self.E1,
            'E2': self.E2,
            'pressure_l53': self.pressure_norm,
            'charge_imbalance': self.charge_imbalance,
        }
