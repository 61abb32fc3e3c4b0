"""Numerical tolerances shared by every decision procedure."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    eps_geom: float = 1e-9  # containment slack, closed comparisons
    eps_unit: float = 1e-12  # unit-vector normalisation
    opt_tol: float = 1e-6  # parameter-space optimiser stop

    def __post_init__(self) -> None:
        for name in ("eps_geom", "eps_unit", "opt_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


DEFAULT = Tolerances()
EPS_GEOM = DEFAULT.eps_geom
EPS_UNIT = DEFAULT.eps_unit
OPT_TOL = DEFAULT.opt_tol
