"""Partial Euler products over Frobenius-order prime sets."""

from ._partialzeta import (
    ZetaSystem,
    __version__,
    continue_f_power,
    cover_zeta_inverse,
    cyclic_system,
    dirichlet_L,
    feq_residual,
    find_zeros,
    g_value,
    graph_boundary_report,
    ihara_zeta_inverse,
    partial_zeta_series,
    quadratic_system,
    riemann_zeta,
    system_from_dict,
)

__all__ = [
    "ZetaSystem",
    "__version__",
    "continue_f_power",
    "cover_zeta_inverse",
    "cyclic_system",
    "dirichlet_L",
    "feq_residual",
    "find_zeros",
    "g_value",
    "graph_boundary_report",
    "ihara_zeta_inverse",
    "partial_zeta_series",
    "quadratic_system",
    "riemann_zeta",
    "system_from_dict",
]
