from nspnp_core.solvers.abstract_solver import (
    EllipticSolver as EllipticSolver,
    CertifiedField as CertifiedField,
    SolveResult as SolveResult,
)
from nspnp_core.solvers.conjugate_gradient import (
    ConjugateGradientSolver as ConjugateGradientSolver,
)
from nspnp_core.solvers.direct import DirectSolver as DirectSolver
from nspnp_core.solvers.factory import SolverFactory as SolverFactory
from nspnp_core.solvers.elliptic import (
    get_solver as get_solver,
    solve_neumann_poisson as solve_neumann_poisson,
    solve_helmholtz as solve_helmholtz,
)
