"""Module level entry points for the elliptic solves."""

from typing import Optional

from nspnp_core.fields import ScalarField
from nspnp_core.models.parameters import EllipticConfig
from nspnp_core.solvers.abstract_solver import CertifiedField, ScalarBoundary
from nspnp_core.solvers.abstract_solver import EllipticSolver
from nspnp_core.solvers.factory import SolverFactory


def get_solver(config: Optional[EllipticConfig] = None) -> EllipticSolver:
    return SolverFactory.build().solver(config=config or EllipticConfig())


def solve_neumann_poisson(
    rhs: ScalarField,
    config: Optional[EllipticConfig] = None,
    scale: float = 0.0,
) -> CertifiedField:
    """Zero mean solution of ``-laplacian(psi) = rhs`` (Neumann or periodic)."""
    return get_solver(config).poisson(rhs, scale=scale)


def solve_helmholtz(
    rhs: ScalarField,
    alpha: float,
    bc: ScalarBoundary = 'neumann',
    config: Optional[EllipticConfig] = None,
) -> CertifiedField:
    """Solution of ``(I - alpha * laplacian) x = rhs``."""
    return get_solver(config).helmholtz(rhs, alpha, bc)
