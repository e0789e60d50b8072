from functools import lru_cache
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, special

from nspnp_core.fields import GridSpec

LAG_RTOL = 1e-9


def chi(s):
    """Bump on ``[0, 1)``: ``exp(-1 / (1 - s))``, zero elsewhere."""
    s = np.asarray(s, dtype=np.float64)
    inside = (s >= 0) & (s < 1)
    out = np.zeros_like(s)
    out[inside] = np.exp(-1.0 / (1.0 - s[inside]))
    return out


def phi(tau):
    """Bump on ``(1, 2)``: ``exp(-1 / ((tau - 1)(2 - tau)))``, zero elsewhere."""
    tau = np.asarray(tau, dtype=np.float64)
    inside = (tau > 1) & (tau < 2)
    out = np.zeros_like(tau)
    t = tau[inside]
    out[inside] = np.exp(-1.0 / ((t - 1.0) * (2.0 - t)))
    return out


@lru_cache(maxsize=8)
def zeta_normalization(dims: int) -> float:
    """Constant making ``zeta`` integrate to one over space and time.

    With ``y = sqrt(tau) z`` the integral factors into a radial integral of
    ``chi`` over the unit ball and a time integral of ``phi(tau) tau^(d/2)``.
    """
    sphere = 2.0 * np.pi ** (dims / 2.0) / special.gamma(dims / 2.0)
    radial, _ = integrate.quad(lambda r: float(chi(r * r)) * r ** (dims - 1), 0.0, 1.0)
    temporal, _ = integrate.quad(lambda t: float(phi(t)) * t ** (dims / 2.0), 1.0, 2.0)
    return 1.0 / (sphere * radial * temporal)


def zeta(y, tau: float) -> float:
    """The space-time kernel ``c * chi(|y|^2 / tau) * phi(tau)``.

    Supported in ``{|y|^2 < tau, 1 < tau < 2}`` with unit integral.
    """
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if tau <= 0:
        return 0.0
    value = chi(np.dot(y, y) / tau) * phi(tau)
    return float(zeta_normalization(len(y)) * value)


class LagKernel(NamedTuple):
    lag: int
    """Time lag in steps."""

    weights: np.ndarray
    """Spatial weights centered on the zero offset."""


class MollifierSpec(BaseModel):
    """The retarded mollifier at scale ``epsilon``.

    At lag ``tau`` the spatial support is ``|y|^2 < length_scale^2 * epsilon * tau``
    and only lags with ``epsilon < tau < 2 epsilon`` contribute.
    """

    model_config = ConfigDict(frozen=True, extra='forbid')

    epsilon: float = Field(gt=0)
    """Retardation scale (time units)."""

    kernel_resolution: int = Field(default=2, ge=2)
    """Minimum number of time steps per epsilon."""

    length_scale: float = Field(default=1.0, gt=0)
    """Converts the time scale into the spatial support radius."""

    def zeta_normalization(self, dims: int) -> float:
        return zeta_normalization(dims)

    def steps_per_epsilon(self, dt: float) -> int:
        """``epsilon / dt`` as an integer.

        Raises
        ------
        ValueError
            If dt does not divide epsilon or resolves it too coarsely
        """
        ratio = self.epsilon / dt
        steps = int(round(ratio))
        if abs(ratio - steps) > LAG_RTOL * max(ratio, 1.0):
            raise ValueError(f'dt={dt} must divide epsilon={self.epsilon}.')
        if steps < self.kernel_resolution:
            raise ValueError(
                f'epsilon={self.epsilon} spans {steps} steps, at least '
                f'{self.kernel_resolution} are required.'
            )
        return steps

    def lag_kernels(self, grid: GridSpec, dt: float) -> tuple[LagKernel, ...]:
        """Discrete weights for every contributing lag, summing to one."""
        return _lag_kernels(self, grid, float(dt))

    def support_radius(self) -> float:
        """Largest spatial reach of the kernel."""
        return self.length_scale * float(np.sqrt(2.0)) * self.epsilon

    @property
    def shrink_delta(self) -> float:
        """Distance the shrink map pulls data away from the walls."""
        return 2.0 * self.length_scale * self.epsilon


@lru_cache(maxsize=32)
def _lag_kernels(spec: MollifierSpec, grid: GridSpec, dt: float) -> tuple[LagKernel, ...]:
    steps = spec.steps_per_epsilon(dt)
    eps = spec.epsilon
    reach = spec.support_radius()
    half = [int(np.floor(reach / h)) for h in grid.spacing]
    offsets = np.meshgrid(
        *[np.arange(-m, m + 1) * h for m, h in zip(half, grid.spacing)], indexing='ij'
    )
    radius_sq = sum(o**2 for o in offsets)

    kernels = []
    for lag in range(steps + 1, 2 * steps):
        tau = lag * dt
        raw = chi(radius_sq / (spec.length_scale**2 * eps * tau)) * phi(tau / eps)
        kernels.append((lag, raw))

    total = sum(float(np.sum(raw)) for _, raw in kernels)
    if total <= 0:
        raise ValueError('The mollifier has no discrete support on this grid.')
    result = []
    for lag, raw in kernels:
        weights = raw / total
        weights.setflags(write=False)
        result.append(LagKernel(lag, weights))
    return tuple(result)
