"""Tangled closure algebras over finite quasi-ordered sets."""

from .kernel import (
    GammaFamily,
    Model,
    PointSet,
    QuasiOrder,
    closure,
    clusters,
    gamma_step,
    interior,
    is_closed,
    is_open,
    tangle_gfp,
    tangle_oracle,
    tangle_scc,
)

__version__ = "0.1.0"
