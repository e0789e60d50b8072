"""Scale invariant cylinder averages of a computed trajectory.

In ``d`` space dimensions

    A(r) = sup_t r^-(d-2) int_{B_r} |u|^2        B(r) = r^-(d-2) int_{Q_r} |grad u|^2
    C(r) = r^-(d-1) int_{Q_r} |u|^3              D(r) = r^-(d-1) int_{Q_r} |P|^(3/2)

which in three dimensions are the familiar ``r^-1`` and ``r^-2`` weights.
Every quantity is invariant under ``u -> r0 u(r0 x, r0^2 t)``,
``P -> r0^2 P(r0 x, r0^2 t)``.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, ParabolicCylinder, spacetime_lp
from nspnp_core.fields.norms import ball_series
from nspnp_core.models.parameters import RegularityConfig
from nspnp_core.models.reports import JsonFloat

MORREY_EXPONENT = 4.0

MORREY_LAMBDA = 2.0


def energy_weight(dims: int, r: float) -> float:
    """Weight of A, B and the ``grad psi`` term."""
    return r ** -(dims - 2)


def cubic_weight(dims: int, r: float) -> float:
    """Weight of C and D."""
    return r ** -(dims - 1)


def morrey_weight(dims: int, r: float, lam: float) -> float:
    """``r^(lambda - (d + 2))``, the parabolic Morrey weight."""
    return r ** (lam - (dims + 2))


def morrey_key(p: float, lam: float) -> str:
    return f'{p:g},{lam:g}'


class CKNReport(BaseModel):
    """Cylinder averages of one parabolic cylinder.

    ``l3_criterion_value = C + (r^-(d-2) gradpsi_L4)^(3/4) + D^2`` and
    ``grad_criterion_value = B``; in three dimensions the weight of the
    ``grad psi`` term is ``r^-1``.
    """

    model_config = ConfigDict(frozen=True)

    cylinder: ParabolicCylinder
    A: JsonFloat
    B: JsonFloat
    C: JsonFloat
    D: JsonFloat
    gradpsi_L4: JsonFloat
    """Raw ``int_{Q_r} |grad psi|^4``."""

    morrey: dict[str, JsonFloat] = Field(default_factory=dict)
    """Morrey samples keyed by ``'p,lambda'``."""

    l3_criterion_value: JsonFloat = 0.0
    grad_criterion_value: JsonFloat = 0.0
    flags: tuple[str, ...] = ()


def require_cylinder(history: FieldHistory, cyl: ParabolicCylinder, component: str = 'regularity'):
    """Raise CoverageException unless the cylinder lies inside the computed data."""
    history.require(cyl.t_start, cyl.t0, component=component)
    if not cyl.is_interior(history.grid):
        raise CoverageException(
            'The cylinder leaves the computed domain.',
            component,
            {'center': cyl.x0, 'radius': cyl.radius},
        )


def sup_energy(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    """``max_t int_{B_r} |u|^2`` over the slices in ``(t0 - r^2, t0]``.

    The value at ``t0`` itself is included, interpolated when it falls
    between slices.
    """
    series = ball_series(history, 'u', 2.0, cyl.x0, cyl.radius)
    inside = history.indices_between(cyl.t_start, cyl.t0, open_start=True)
    candidates = [float(np.interp(cyl.t0, history.times, series))]
    candidates.extend(float(series[i]) for i in inside)
    return max(candidates)


def l3_value(C: float, D: float, gradpsi_L4: float, dims: int, r: float) -> float:
    """``C + (weight * int |grad psi|^4)^(3/4) + D^2``."""
    return C + (energy_weight(dims, r) * gradpsi_L4) ** 0.75 + D**2


def ckn(
    history: FieldHistory,
    cyl: ParabolicCylinder,
    config: Optional[RegularityConfig] = None,
) -> CKNReport:
    """A, B, C, D and the criterion values over one cylinder.

    With a configuration the report also carries the names of the failed
    criteria in ``flags``.

    Raises
    ------
    CoverageException
        If the cylinder is not interior or the history does not cover it
    """
    require_cylinder(history, cyl, 'ckn')
    dims = history.grid.dims
    r = cyl.radius

    A = energy_weight(dims, r) * sup_energy(history, cyl)
    B = energy_weight(dims, r) * spacetime_lp(history, 'grad_u', 2.0, cyl).integral
    C = cubic_weight(dims, r) * spacetime_lp(history, 'u', 3.0, cyl).integral
    D = cubic_weight(dims, r) * spacetime_lp(history, 'P', 1.5, cyl).integral
    gradpsi = spacetime_lp(history, 'grad_psi', MORREY_EXPONENT, cyl).integral

    l3 = l3_value(C, D, gradpsi, dims, r)
    flags = []
    if config is not None:
        if not l3 < config.epsilon0**3:
            flags.append('l3')
        if not B < config.epsilon1**2:
            flags.append('grad')

    return CKNReport(
        cylinder=cyl,
        A=A,
        B=B,
        C=C,
        D=D,
        gradpsi_L4=gradpsi,
        morrey={
            morrey_key(MORREY_EXPONENT, MORREY_LAMBDA): morrey_weight(dims, r, MORREY_LAMBDA)
            * gradpsi
        },
        l3_criterion_value=l3,
        grad_criterion_value=B,
        flags=tuple(flags),
    )
