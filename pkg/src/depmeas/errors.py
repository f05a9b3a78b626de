"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI and the HTTP layer agree on the
failure class: 2 = bad input, 3 = degenerate statistics (the requested measure
is undefined for this data), 4 = numerical failure. Unexpected exceptions map
to 1.
"""

from __future__ import annotations


class DepmeasError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(DepmeasError):
    """The supplied data or options violate an input contract."""

    exit_code = 2


class ParseError(InputError):
    """A cell could not be parsed, or a non-finite numeric was supplied."""

    def __init__(self, message: str, line: int | None = None, column: str | int | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class EmptyFileError(InputError):
    """The input file contains no data rows."""


class EmptyInputError(InputError):
    """An operation received an empty vector."""


class LengthMismatchError(InputError):
    """Paired vectors or curve sets differ in length."""


class EmptyGroupError(InputError):
    """A fitted group contains no observations.

    Unreachable through the public fitting paths (groups come from observed
    categories or rank bins), kept as a guard against internal misuse.
    """


class MissingCodesError(InputError):
    """The correlation ratio needs numeric outcome codes and none were given."""


class GridNotIncreasingError(InputError):
    """Curve grid points must be strictly increasing."""


class RaggedRowsError(InputError):
    """Curve file rows have inconsistent lengths."""


class GridMismatchError(InputError):
    """Two curve sets do not share a common grid."""


class DegenerateStatisticsError(DepmeasError):
    """The measure is undefined for this input (e.g. constant target)."""

    exit_code = 3


class DegenerateTargetError(DegenerateStatisticsError):
    """The target variable carries no information about itself (e.g. Y constant)."""


class ZeroBaselineError(DegenerateStatisticsError):
    """The baseline predictor already makes no errors, so no reduction is defined."""


class NumericalError(DepmeasError):
    """A numerical procedure failed (singularity, divergence, infinities)."""

    exit_code = 4


class RankDeficientError(NumericalError):
    """Too few usable eigenvalues above the numerical floor."""


class SingularDesignError(NumericalError):
    """The least-squares design matrix is singular or too ill-conditioned."""


class InfiniteDevianceError(NumericalError):
    """A deviance term is infinite (fitted probability 0 or 1 contradicting data)."""
