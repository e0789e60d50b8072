"""Test suite for the charge transport step."""

import numpy as np
import pytest

from nspnp_core.exceptions import StabilityException
from nspnp_core.fields import (
    GridSpec,
    ScalarField,
    VectorField,
    solenoidal_from_streamfunction,
)
from nspnp_core.models import NPStepParams
from nspnp_core.simulation import potential
from nspnp_core.transport import (
    drift_divergence,
    electric_divergence,
    lp_dissipation,
    lp_ledger,
    np_step,
)


def densities(grid: GridSpec) -> tuple[ScalarField, ScalarField]:
    n_plus = ScalarField.from_function(
        grid, lambda x, y: 1.0 + 0.3 * np.cos(np.pi * x) * np.cos(np.pi * y)
    )
    n_minus = ScalarField.from_function(grid, lambda x, y: 1.0 - 0.2 * np.cos(np.pi * x))
    return n_plus, n_minus


def vortex(grid: GridSpec) -> VectorField:
    return solenoidal_from_streamfunction(
        grid, lambda x, y: np.sin(np.pi * x) ** 2 * np.sin(np.pi * y) ** 2
    )


@pytest.fixture(params=['periodic', 'wall'])
def grid(request):
    return GridSpec.uniform(2, 16, bc=request.param)


@pytest.mark.parametrize('scheme', ['centered', 'upwind'])
def test_drift_flux_telescopes(grid, scheme):
    n_plus, _ = densities(grid)

    div = drift_divergence(n_plus, vortex(grid), scheme)

    assert abs(float(np.sum(div))) < 1e-10


@pytest.mark.parametrize('scheme', ['centered', 'upwind'])
def test_step_conserves_both_masses(grid, scheme):
    n_plus, n_minus = densities(grid)
    psi = potential(n_plus, n_minus)
    params = NPStepParams(dt=1e-3, advection=scheme)

    plus, minus = np_step(n_plus, n_minus, vortex(grid), psi, params)

    assert plus.integral() == pytest.approx(n_plus.integral(), rel=1e-12)
    assert minus.integral() == pytest.approx(n_minus.integral(), rel=1e-12)


def test_pure_diffusion_obeys_the_maximum_principle(grid):
    n_plus, n_minus = densities(grid)
    zero_drift = VectorField.zeros(grid)
    zero_psi = ScalarField.zeros(grid)

    plus, minus = np_step(n_plus, n_minus, zero_drift, zero_psi, NPStepParams(dt=0.01))

    assert plus.values.max() <= n_plus.values.max() + 1e-8
    assert plus.min() >= n_plus.min() - 1e-8
    assert lp_ledger(plus, minus, 2) < lp_ledger(n_plus, n_minus, 2)


def test_electric_flux_ignores_negative_density(grid):
    negative = ScalarField.constant(grid, -1.0)
    psi = ScalarField.from_function(grid, lambda x, y: np.cos(np.pi * x))

    clipped = electric_divergence(negative, psi, 1.0, clip=True)
    unclipped = electric_divergence(negative, psi, 1.0, clip=False)

    assert np.all(clipped == 0.0)
    assert np.max(np.abs(unclipped)) > 0


def test_electric_flux_telescopes(grid):
    n_plus, _ = densities(grid)
    psi = ScalarField.from_function(grid, lambda x, y: np.cos(np.pi * x) * np.sin(np.pi * y))

    for sign in (1.0, -1.0):
        div = electric_divergence(n_plus, psi, sign)
        assert abs(float(np.sum(div))) < 1e-10


def test_blow_up_raises_stability_exception():
    grid = GridSpec.uniform(2, 8)
    n_plus = ScalarField.from_function(grid, lambda x, y: 1.0 + 0.5 * np.cos(2 * np.pi * x))
    fast = VectorField.constant(grid, (1000.0, 0.0))

    with pytest.raises(StabilityException) as excinfo:
        np_step(n_plus, n_plus, fast, ScalarField.zeros(grid), NPStepParams(dt=1.0))

    assert excinfo.value.component == 'nernst_planck'
    assert 'grew from' in excinfo.value.message


class TestLpLedger:
    def test_constant_densities(self):
        grid = GridSpec.uniform(2, 8)
        n = ScalarField.constant(grid, 2.0)

        assert lp_ledger(n, n, 2) == pytest.approx(8.0)
        assert lp_ledger(n, n, 3) == pytest.approx(16.0)
        assert lp_dissipation(n, n, 2) == 0.0

    def test_exponent_below_two_raises(self):
        grid = GridSpec.uniform(2, 8)
        n = ScalarField.constant(grid, 1.0)

        with pytest.raises(ValueError):
            lp_ledger(n, n, 1.5)
        with pytest.raises(ValueError):
            lp_dissipation(n, n, 1.0)

    def test_dissipation_is_positive_for_varying_densities(self, grid):
        n_plus, n_minus = densities(grid)

        assert lp_dissipation(n_plus, n_minus, 2) > 0


def cosine_amplitude(n: ScalarField, phase: np.ndarray) -> float:
    return float(np.sum((n.values - n.mean()) * phase) / np.sum(phase**2))


def second_moment(n: ScalarField, center: tuple[float, float]) -> float:
    distance = ScalarField.from_function(
        n.grid, lambda x, y: (x - center[0]) ** 2 + (y - center[1]) ** 2
    )
    return float(np.sum(n.values * distance.values)) * n.grid.cell_volume


class TestCharges:
    def test_fourier_mode_decays_at_the_diffusive_rate(self):
        grid = GridSpec.uniform(2, 32)
        n = ScalarField.from_function(grid, lambda x, y: 1.0 + 0.5 * np.cos(2 * np.pi * x))
        phase = ScalarField.from_function(grid, lambda x, y: np.cos(2 * np.pi * x)).values
        dt = 0.01
        zero_drift = VectorField.zeros(grid)
        zero_psi = ScalarField.zeros(grid)

        plus, minus = n, n
        for _ in range(5):
            plus, minus = np_step(plus, minus, zero_drift, zero_psi, NPStepParams(dt=dt))

        h = grid.spacing[0]
        discrete = 4 / h**2 * np.sin(np.pi * h) ** 2
        ratio = cosine_amplitude(plus, phase) / cosine_amplitude(n, phase)
        assert ratio == pytest.approx((1 + dt * discrete) ** -5, rel=1e-6)
        assert ratio == pytest.approx((1 + dt * (2 * np.pi) ** 2) ** -5, rel=1e-2)
        np.testing.assert_allclose(minus.values, plus.values, atol=1e-12)

    def test_self_repulsion_spreads_faster_than_diffusion(self):
        grid = GridSpec.uniform(2, 32, bc='wall')
        center = (0.5, 0.5)
        blob = ScalarField.from_function(
            grid, lambda x, y: 200.0 * np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / 0.01)
        )
        background = ScalarField.constant(grid, blob.mean())
        zero_drift = VectorField.zeros(grid)
        params = NPStepParams(dt=5e-4)

        coupled = (blob, background)
        diffused = (blob, background)
        for _ in range(10):
            psi = potential(*coupled)
            coupled = np_step(*coupled, zero_drift, psi, params)
            diffused = np_step(*diffused, zero_drift, ScalarField.zeros(grid), params)

        start = second_moment(blob, center)
        diffusive_gain = second_moment(diffused[0], center) - start
        coupled_gain = second_moment(coupled[0], center) - start
        assert diffusive_gain == pytest.approx(4 * blob.integral() * 5e-3, rel=5e-3)
        assert coupled_gain > 1.1 * diffusive_gain

    @pytest.mark.parametrize('p', [2, 4])
    def test_lp_ledger_never_increases_without_drift(self, grid, p):
        plus, minus = densities(grid)
        zero_drift = VectorField.zeros(grid)
        ledger = [lp_ledger(plus, minus, p)]

        for _ in range(10):
            plus, minus = np_step(
                plus, minus, zero_drift, potential(plus, minus), NPStepParams(dt=1e-3)
            )
            ledger.append(lp_ledger(plus, minus, p))

        assert all(b <= a * (1 + 1e-12) for a, b in zip(ledger, ledger[1:]))
        assert ledger[-1] < ledger[0]

    @pytest.mark.parametrize('dt', [2e-3, 1e-3, 5e-4])
    def test_upwind_step_keeps_densities_non_negative(self, dt):
        grid = GridSpec.uniform(2, 32, bc='wall')
        plus = ScalarField.from_function(
            grid, lambda x, y: 5.0 * np.exp(-((x - 0.35) ** 2 + (y - 0.5) ** 2) / 0.01)
        )
        minus = ScalarField.constant(grid, plus.mean())
        drift = vortex(grid)
        params = NPStepParams(dt=dt, advection='upwind')

        lowest = min(plus.min(), minus.min())
        for _ in range(int(round(0.02 / dt))):
            plus, minus = np_step(plus, minus, drift, potential(plus, minus), params)
            lowest = min(lowest, plus.min(), minus.min())

        assert lowest >= -1e-8
