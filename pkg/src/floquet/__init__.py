"""Delta-kicked field dynamics"""

from src.floquet.kicked import (
    FloquetOperator,
    KickSpec,
    KickedDynamics,
    analytic_v_eigenvalues,
    build_floquet,
    kicked_engine,
    kicked_loschmidt,
    kicked_momentum_dist,
    kicked_series,
    kicked_state,
)

__all__ = [
    "FloquetOperator",
    "KickSpec",
    "KickedDynamics",
    "analytic_v_eigenvalues",
    "build_floquet",
    "kicked_engine",
    "kicked_loschmidt",
    "kicked_momentum_dist",
    "kicked_series",
    "kicked_state",
]
