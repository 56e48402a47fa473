"""Exact verification of noncommutative Toda chains and Painleve II over matrix-valued series."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebra import Series  # noqa: E402
from .errors import (BasePointSingular, ConfigError, ConstraintViolated, GammaNotConstant,  # noqa: E402
                     MatrixNotInvertible, NCTodaError, OrderExhausted, SingularConstantTerm,
                     SubmatrixNotInvertible)
from .hankel import HankelSystem  # noqa: E402
from .quasidet import NCMat, nc_invert_matrix, quasidet, sylvester_rhs  # noqa: E402

__all__ = [
    "__version__", "Series", "NCMat", "HankelSystem", "quasidet", "nc_invert_matrix", "sylvester_rhs",
    "NCTodaError", "SingularConstantTerm", "MatrixNotInvertible", "SubmatrixNotInvertible",
    "BasePointSingular", "OrderExhausted", "ConstraintViolated", "GammaNotConstant", "ConfigError",
]
