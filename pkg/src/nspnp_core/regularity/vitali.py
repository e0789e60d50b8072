"""Five-times covering estimates for sets of flagged cylinders."""

from typing import Iterable, NamedTuple

from nspnp_core.fields import FieldHistory, ParabolicCylinder, spacetime_lp


class VitaliBound(NamedTuple):
    cover_sum: float
    """``sum 5 r_i`` over the selected cylinders."""

    bound: float
    """``5 epsilon1^-2 sum int_{Q_{r_i}} |grad u|^2`` over the same cylinders."""

    selected: list[ParabolicCylinder]


def _conflict(a: ParabolicCylinder, b: ParabolicCylinder) -> bool:
    return a.distance(b) < a.radius + b.radius


def vitali_select(cylinders: Iterable[ParabolicCylinder]) -> list[ParabolicCylinder]:
    """Greedy pairwise disjoint subfamily, largest radius first.

    Two cylinders are disjoint when the parabolic distance of their centers
    is at least the sum of their radii. Ties are broken by center, so the
    result does not depend on the input order; duplicates collapse.
    """
    ordered = sorted(set(cylinders), key=lambda c: (-c.radius, c.x0, c.t0))
    selected: list[ParabolicCylinder] = []
    for candidate in ordered:
        if all(not _conflict(candidate, kept) for kept in selected):
            selected.append(candidate)
    return selected


def vitali_cover(cylinders: Iterable[ParabolicCylinder]) -> float:
    """``sum 5 r_i`` over a greedy disjoint subfamily; the five-fold
    enlargements of the subfamily cover every input cylinder."""
    return sum(5.0 * c.radius for c in vitali_select(cylinders))


def vitali_bound(
    history: FieldHistory, cylinders: Iterable[ParabolicCylinder], epsilon1: float
) -> VitaliBound:
    """The covering sum together with the gradient energy estimate that bounds it.

    Raises
    ------
    CoverageException
        If a selected cylinder is not covered by the history
    """
    selected = vitali_select(cylinders)
    energy = sum(spacetime_lp(history, 'grad_u', 2.0, c).integral for c in selected)
    return VitaliBound(
        cover_sum=sum(5.0 * c.radius for c in selected),
        bound=5.0 * energy / epsilon1**2,
        selected=selected,
    )
