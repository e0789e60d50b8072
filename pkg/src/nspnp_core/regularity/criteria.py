from typing import Sequence

from nspnp_core.fields import FieldHistory, GridSpec, ParabolicCylinder
from nspnp_core.fields.norms import spacetime_lp
from nspnp_core.regularity.quantities import CKNReport, energy_weight, require_cylinder

RESOLUTION_CELLS = 4


def criterion_l3(report: CKNReport, epsilon0: float) -> bool:
    """Smallness of the cubic criterion; the boundary value fails."""
    return report.l3_criterion_value < epsilon0**3


def resolvable_radii(grid: GridSpec, radii: Sequence[float]) -> list[float]:
    """The radii spanning at least four cells, smallest first."""
    return sorted(r for r in radii if r >= RESOLUTION_CELLS * grid.h_min)


def gradient_energy(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    """``B(r)`` alone, without the other cylinder quantities."""
    require_cylinder(history, cyl, 'criterion_grad')
    return energy_weight(history.grid.dims, cyl.radius) * spacetime_lp(
        history, 'grad_u', 2.0, cyl
    ).integral


def grad_limsup(history: FieldHistory, x0, t0: float, radii: Sequence[float]) -> float:
    """Resolution limited ``limsup_{r -> 0} B(r)``: the larger B of the two smallest radii.

    Raises
    ------
    ValueError
        If fewer than two radii resolve at least four cells
    CoverageException
        If a cylinder is not covered by the history
    """
    usable = resolvable_radii(history.grid, radii)
    if len(usable) < 2:
        raise ValueError(
            f'At least two radii of {RESOLUTION_CELLS} cells or more are required, '
            f'received {list(radii)} with h={history.grid.h_min}.'
        )
    return max(
        gradient_energy(history, ParabolicCylinder(tuple(x0), t0, r)) for r in usable[:2]
    )


def criterion_grad(
    history: FieldHistory, x0, t0: float, radii: Sequence[float], epsilon1: float
) -> bool:
    """Whether the gradient energy stays below ``epsilon1^2`` near ``(x0, t0)``."""
    return grad_limsup(history, x0, t0, radii) < epsilon1**2
