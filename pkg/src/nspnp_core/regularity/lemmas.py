"""Numerical checks of the inequalities behind the decay iteration.

Every check evaluates both sides of one inequality with an adjustable
constant and reports their ratio. A ratio below one means the computed
data satisfy the inequality with that constant; the checks certify
boundedness, not sharpness.
"""

from typing import Iterable, NamedTuple, Sequence

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, ParabolicCylinder, VectorField, spacetime_lp
from nspnp_core.fields.densities import magnitude
from nspnp_core.fields.norms import Ball, region_integral
from nspnp_core.fields.operators import velocity_gradient_squared
from nspnp_core.regularity.quantities import (
    MORREY_EXPONENT,
    MORREY_LAMBDA,
    cubic_weight,
    energy_weight,
    morrey_weight,
    require_cylinder,
    sup_energy,
)

DEFAULT_CONSTANT = 100.0


class LemmaCheck(NamedTuple):
    lhs: float
    rhs: float
    """Right hand side including the constant."""

    ratio: float
    """``lhs / rhs``; zero when both sides vanish."""

    terms: dict[str, float]
    """The individual right hand side terms, constant included."""


def _check(lhs: float, terms: dict[str, float]) -> LemmaCheck:
    rhs = float(sum(terms.values()))
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else float('inf')
    return LemmaCheck(float(lhs), rhs, float(ratio), terms)


def interpolation_exponent(dims: int, q: float) -> float:
    """``a = q/2 - d(q - 2)/4``; three dimensions give ``(3/2)(1 - q/6)``."""
    return q / 2.0 - dims * (q - 2.0) / 4.0


def check_interpolation(
    u: VectorField,
    center: Sequence[float],
    r: float,
    q: float,
    constant: float = DEFAULT_CONSTANT,
) -> LemmaCheck:
    """The local interpolation inequality on ``B_r(center)``

        int |u|^q <= C (int |grad u|^2)^(q/2 - a) (int |u|^2)^a
                     + C r^(d(1 - q/2)) (int |u|^2)^(q/2)

    Raises
    ------
    ValueError
        If q is outside ``[2, 6]`` or the ball leaves the domain
    """
    if not 2 <= q <= 6:
        raise ValueError(f'The exponent q must lie in [2, 6], received [{q}].')
    grid = u.grid
    ball = Ball(tuple(float(c) for c in center), float(r))
    speed = magnitude(u)
    lhs = region_integral(speed**q, grid, ball)
    energy = region_integral(speed**2, grid, ball)
    gradient = region_integral(velocity_gradient_squared(u), grid, ball)

    a = interpolation_exponent(grid.dims, q)
    return _check(
        lhs,
        {
            'gradient': constant * gradient ** (q / 2.0 - a) * energy**a,
            'energy': constant * r ** (grid.dims * (1.0 - q / 2.0)) * energy ** (q / 2.0),
        },
    )


def _cylinders(history: FieldHistory, x0, t0: float, r: float, rho: float):
    small = ParabolicCylinder(tuple(x0), t0, r)
    large = ParabolicCylinder(tuple(x0), t0, rho)
    require_cylinder(history, large, 'lemma')
    return small, large


def _A(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    return energy_weight(history.grid.dims, cyl.radius) * sup_energy(history, cyl)


def _B(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    return energy_weight(history.grid.dims, cyl.radius) * spacetime_lp(
        history, 'grad_u', 2.0, cyl
    ).integral


def _C(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    return cubic_weight(history.grid.dims, cyl.radius) * spacetime_lp(
        history, 'u', 3.0, cyl
    ).integral


def _D(history: FieldHistory, cyl: ParabolicCylinder) -> float:
    return cubic_weight(history.grid.dims, cyl.radius) * spacetime_lp(
        history, 'P', 1.5, cyl
    ).integral


def check_Cr(
    history: FieldHistory,
    x0: Sequence[float],
    t0: float,
    r: float,
    rho: float,
    constant: float = DEFAULT_CONSTANT,
) -> LemmaCheck:
    """``C(r) <= C0 [(r/rho)^3 A(rho)^(3/2) + (rho/r)^3 A(rho)^(3/4) B(rho)^(3/4)]``.

    Raises
    ------
    ValueError
        If r is not in ``(0, rho]``
    CoverageException
        If the larger cylinder is not covered
    """
    if not 0 < r <= rho:
        raise ValueError(f'Expected 0 < r <= rho, received r={r}, rho={rho}.')
    small, large = _cylinders(history, x0, t0, r, rho)
    A, B = _A(history, large), _B(history, large)
    return _check(
        _C(history, small),
        {
            'energy': constant * (r / rho) ** 3 * A**1.5,
            'mixed': constant * (rho / r) ** 3 * A**0.75 * B**0.75,
        },
    )


def check_Dr(
    history: FieldHistory,
    x0: Sequence[float],
    t0: float,
    r: float,
    rho: float,
    constant: float = DEFAULT_CONSTANT,
) -> LemmaCheck:
    """``D(r) <= C [(r/rho) D(rho) + (rho/r)^2 A(rho)^(3/4) B(rho)^(3/4) + (rho/r)^2 rho^(3/2)]``.

    The last term bounds the electric force and does not vanish for a zero
    state.

    Raises
    ------
    ValueError
        If r is not in ``(0, rho/2]``
    CoverageException
        If the larger cylinder is not covered
    """
    if not 0 < r <= rho / 2:
        raise ValueError(f'Expected 0 < r <= rho/2, received r={r}, rho={rho}.')
    small, large = _cylinders(history, x0, t0, r, rho)
    A, B = _A(history, large), _B(history, large)
    return _check(
        _D(history, small),
        {
            'pressure': constant * (r / rho) * _D(history, large),
            'mixed': constant * (rho / r) ** 2 * A**0.75 * B**0.75,
            'force': constant * (rho / r) ** 2 * rho**1.5,
        },
    )


def morrey_sample(history: FieldHistory, selector: str, p: float, lam: float, cyl) -> float:
    """``r^(lambda - (d + 2)) int_{Q_r} |f|^p`` over one cylinder."""
    integral = spacetime_lp(history, selector, p, cyl).integral
    return morrey_weight(history.grid.dims, cyl.radius, lam) * integral


def _check_morrey(dims: int, p: float, lam: float):
    if p < 1:
        raise ValueError(f'The exponent p must be at least 1, received [{p}].')
    if not 0 <= lam <= dims + 2:
        raise ValueError(f'lambda must lie in [0, {dims + 2}], received [{lam}].')


def morrey_norm(
    history: FieldHistory,
    selector: str,
    p: float,
    lam: float,
    centers: Iterable[tuple[Sequence[float], float]],
    radii: Sequence[float],
) -> float:
    """Largest Morrey sample over every ``(center, radius)`` pair.

    Raises
    ------
    ValueError
        If p or lambda are out of range
    CoverageException
        If a cylinder is not covered by the history
    """
    _check_morrey(history.grid.dims, p, lam)
    samples = [
        morrey_sample(history, selector, p, lam, ParabolicCylinder(tuple(x0), t0, r))
        for x0, t0 in centers
        for r in radii
    ]
    return max(samples, default=0.0)


class MorreyFit(NamedTuple):
    constant: float
    """Smallest K with ``r^(lambda - (d + 2)) int_{Q_r} |f|^p <= K`` on every sampled cylinder."""

    evaluated: int
    skipped: int


def fit_morrey_constant(
    history: FieldHistory,
    centers: Iterable[tuple[Sequence[float], float]],
    radii: Sequence[float],
    selector: str = 'grad_psi',
    p: float = MORREY_EXPONENT,
    lam: float = MORREY_LAMBDA,
) -> MorreyFit:
    """Fit the Morrey bound of ``|f|^p`` over the cylinders that fit the data.

    With the defaults this is the constant of ``int_{Q_r} |grad psi|^4 <= K r^d``.
    Cylinders leaving the domain or the history are skipped.
    """
    _check_morrey(history.grid.dims, p, lam)
    best = 0.0
    evaluated = skipped = 0
    for x0, t0 in centers:
        for r in radii:
            cyl = ParabolicCylinder(tuple(x0), t0, r)
            try:
                value = morrey_sample(history, selector, p, lam, cyl)
            except CoverageException:
                skipped += 1
                continue
            evaluated += 1
            best = max(best, float(value))
    return MorreyFit(best, evaluated, skipped)
