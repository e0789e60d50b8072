import numpy as np
import pytest

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, GridSpec, ScalarField, State, VectorField
from nspnp_core.regularity import (
    LocalEnergyProbe,
    local_energy_balance,
    local_energy_residual,
)

DT = 0.0125


@pytest.fixture
def grid():
    return GridSpec.uniform(2, 32)


@pytest.fixture
def probe():
    return LocalEnergyProbe((15.5 / 32, 15.5 / 32), 0.05, 0.25, 0.04)


class TestProbe:
    def test_invalid_support_raises(self):
        with pytest.raises(ValueError):
            LocalEnergyProbe((0.5, 0.5), 0.05, 0.0, 0.04)
        with pytest.raises(ValueError):
            LocalEnergyProbe((0.5, 0.5), 0.05, 0.25, -1.0)

    def test_bump_peaks_at_the_center(self, grid, probe):
        phi, phi_t, grad, lap = probe.evaluate(grid, probe.tc)

        assert phi.max() == pytest.approx(1.0)
        assert phi[15, 15] == pytest.approx(1.0)
        assert np.all(phi >= 0)
        np.testing.assert_allclose(phi_t, 0.0, atol=1e-12)
        assert lap[15, 15] < 0
        assert grad[0][15, 15] == pytest.approx(0.0, abs=1e-12)

    def test_bump_support(self, grid, probe):
        phi, _, _, _ = probe.evaluate(grid, probe.tc)

        assert phi[0, 0] == 0.0
        assert np.all(probe.evaluate(grid, probe.t_end + 0.01)[0] == 0.0)

    def test_window(self, probe):
        assert probe.t_start == pytest.approx(0.01)
        assert probe.t_end == pytest.approx(0.09)


class TestBalance:
    def test_fluid_at_rest_balances_exactly(self, grid, probe):
        history = FieldHistory(State.zeros(grid, k * DT) for k in range(9))

        balance = local_energy_balance(history, probe)

        assert balance.dissipation == 0.0
        assert balance.right_hand_side == 0.0
        assert local_energy_residual(history, probe) == 0.0

    def test_shear_flow_dissipates(self, grid, probe):
        u = VectorField.from_function(
            grid, [lambda x, y: np.sin(2 * np.pi * y), lambda x, y: np.zeros_like(x)]
        )
        history = FieldHistory(State.zeros(grid, k * DT).replace(u=u) for k in range(9))

        balance = local_energy_balance(history, probe)

        assert balance.dissipation > 0
        assert balance.residual == pytest.approx(balance.right_hand_side - balance.dissipation)

    def test_probe_outside_the_history_raises(self, grid, probe):
        history = FieldHistory(State.zeros(grid, k * DT) for k in range(4))

        with pytest.raises(CoverageException):
            local_energy_balance(history, probe)

    def test_probe_leaving_the_box_raises(self, grid):
        history = FieldHistory(State.zeros(grid, k * DT) for k in range(9))
        probe = LocalEnergyProbe((0.1, 0.5), 0.05, 0.25, 0.04)

        with pytest.raises(CoverageException) as excinfo:
            local_energy_balance(history, probe)

        assert excinfo.value.component == 'local_energy'


def taylor_green_solution(n: int) -> FieldHistory:
    """The decaying vortex on the 2 pi box, an exact solution at unit viscosity."""
    grid = GridSpec.uniform(2, n, length=2 * np.pi)
    dt = 0.4 / n
    states = []
    for k in range(int(round(0.6 / dt)) + 1):
        decay = np.exp(-2 * k * dt)
        u = VectorField.from_function(
            grid,
            [
                lambda x, y: decay * np.sin(x) * np.cos(y),
                lambda x, y: -decay * np.cos(x) * np.sin(y),
            ],
        )
        pressure = ScalarField.from_function(
            grid, lambda x, y: 0.25 * decay**2 * (np.cos(2 * x) + np.cos(2 * y))
        )
        states.append(State.zeros(grid, k * dt).replace(u=u, P=pressure))
    return FieldHistory(states)


def test_smooth_solution_balance_converges_under_refinement():
    bump = LocalEnergyProbe((np.pi, np.pi), 0.3, 2.0, 0.25)

    errors = []
    for n in (16, 32, 64):
        balance = local_energy_balance(taylor_green_solution(n), bump)
        assert balance.dissipation > 0
        errors.append(abs(balance.residual) / balance.dissipation)

    assert errors[1] < 0.5 * errors[0]
    assert errors[2] < 0.5 * errors[1]
    assert errors[2] < 0.05
