from typing import Literal, Optional, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

SolverMethod = Literal['conjugate-gradient', 'direct-small']

AdvectionScheme = Literal['centered', 'upwind']

ForceForm = Literal['charge_gradient', 'maxwell_stress']


class EllipticConfig(BaseModel):
    """Tolerances and method of the elliptic solves."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    tol: float = Field(default=1e-10, gt=0)
    """Relative residual tolerance."""

    max_iter: int = Field(default=10000, ge=1)
    """Maximum number of Krylov iterations per solve."""

    method: SolverMethod = 'conjugate-gradient'
    """Solver used for the system."""

    compat_tol: float = Field(default=1e-8, gt=0)
    """Relative tolerance on the mean of a Neumann or periodic right hand side."""


class NPStepParams(BaseModel):
    """Parameters of one charge transport step."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    dt: float = Field(gt=0)
    """Time step."""

    clip_in_flux: bool = True
    """Use ``[n]_+`` in the electric flux."""

    advection: AdvectionScheme = 'centered'
    """Face value of the densities in the drift flux."""


class NSStepParams(BaseModel):
    """Parameters of one momentum step."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    dt: float = Field(gt=0)
    """Time step."""

    force_form: ForceForm = 'maxwell_stress'
    """How the electric body force is evaluated."""

    advection: AdvectionScheme = 'centered'
    """Face value of the transported velocity in the momentum flux."""


class PicardConfig(BaseModel):
    """Stopping rules of the fixed point iteration."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    tol: float = Field(default=1e-8, gt=0)
    """Relative tolerance on the increment in the trajectory norm."""

    max_iters: int = Field(default=50, ge=1)
    """Iteration budget, shared across restarts."""

    t_shrink: float = Field(default=0.5, gt=0, lt=1)
    """Factor applied to the horizon when the iteration does not contract."""

    max_restarts: int = Field(default=6, ge=0)
    """How many times the horizon may shrink."""

    ratio_target: float = Field(default=0.5, gt=0, lt=1)
    """Contraction ratio searched by the horizon bisection."""


class RegularityConfig(BaseModel):
    """Parameters of the cylinder scans and the lemma checks."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    radii: tuple[float, ...] = (0.25, 0.125)
    """Cylinder radii, strictly decreasing."""

    stride_space: int = Field(default=4, ge=1)
    """Spacing of the scanned centers, in cells."""

    stride_time: int = Field(default=1, ge=1)
    """Spacing of the scanned center times, in history slices."""

    times: Optional[tuple[float, ...]] = None
    """Explicit center times; all slices allowed by the stride when omitted."""

    epsilon0: float = Field(default=0.1, gt=0)
    """Threshold of the cubic criterion."""

    epsilon1: float = Field(default=0.1, gt=0)
    """Threshold of the gradient criterion."""

    theta0: float = Field(default=0.25, gt=0, lt=0.5)
    """Decay ratio between nested cylinders."""

    interpolation_constant: float = Field(default=100.0, gt=0)
    """Constant of the interpolation inequality check."""

    cr_constant: float = Field(default=100.0, gt=0)
    """Constant of the cubic decay check."""

    dr_constant: float = Field(default=100.0, gt=0)
    """Constant of the pressure decay check."""

    workers: Optional[int] = Field(default=None, ge=1)
    """Worker threads for the scan."""

    @model_validator(mode='after')
    def _check_radii(self) -> Self:
        if len(self.radii) == 0 or any(r <= 0 for r in self.radii):
            raise ValueError('Radii must be positive and at least one is required.')
        if any(b >= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError('Radii must be strictly decreasing.')
        return self
