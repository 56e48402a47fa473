"""Exception types raised by the algebra and verification layers."""

from __future__ import annotations


class NCTodaError(Exception):
    """Base class for every error raised by :mod:`nctoda`."""


class SingularConstantTerm(NCTodaError, ZeroDivisionError):
    """A series was inverted whose constant coefficient is a singular matrix."""


class MatrixNotInvertible(SingularConstantTerm):
    """A matrix over the series ring has no inverse."""


class SubmatrixNotInvertible(SingularConstantTerm):
    """The submatrix ``A^{ij}`` needed for the quasideterminant ``|A|_ij`` is singular."""

    def __init__(self, row: int, col: int, size: int):
        self.row = row
        self.col = col
        self.size = size
        super().__init__(
            f"quasideterminant |A|_({row},{col}) of a {size}x{size} matrix is undefined: "
            f"submatrix with row {row} and column {col} deleted is not invertible"
        )


class BasePointSingular(SingularConstantTerm):
    """A determinant that must be inverted vanishes at the chosen base point."""


class OrderExhausted(NCTodaError, ValueError):
    """An operation would need more valid order than the operand carries."""


class ConstraintViolated(NCTodaError, ValueError):
    """Seed initial data do not satisfy the Wronskian-type constraint."""


class GammaNotConstant(NCTodaError, ValueError):
    """The integration constant of the three-variable reduction is not a central constant."""


class ConfigError(NCTodaError, ValueError):
    """Malformed or inconsistent verification configuration."""
