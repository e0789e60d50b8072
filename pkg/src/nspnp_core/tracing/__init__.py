"""
Tracing and metrics for solver runs.

Usage:
    from nspnp_core.tracing import tracer

    tracer.configure(config=NspnpConfig())

    with tracer.span('simulation-run', steps=100):
        ...

    tracer.count('simulation.steps')
    tracer.histogram('elliptic.iterations', 42, method='conjugate-gradient')
"""

from nspnp_core.tracing.client import (
    NspnpTracer,
    get_tracer,
    tracer,
)

__all__ = [
    'NspnpTracer',
    'get_tracer',
    'tracer',
]
