"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage problems exit 2,
bad input data exits 3, guard refusals exit 4.
"""


class TreecrossError(Exception):
    """Base class for all package-specific errors."""


class InvalidCodeError(TreecrossError):
    """A label sequence is not a valid tree code for its vertex count."""


class InvalidTreeError(TreecrossError):
    """An edge set is not a labelled tree (wrong count, cycle, disconnected)."""


class InvalidForestError(TreecrossError):
    """Forest components overlap, contain a cycle, or are disconnected."""


class CoordinateBoundError(TreecrossError):
    """A coordinate exceeds the exact-arithmetic magnitude bound."""


class GeneralPositionError(TreecrossError):
    """Three input points are collinear."""


class PointsFileError(TreecrossError):
    """A point-set file does not follow the normative format."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class GuardError(TreecrossError):
    """A computation was refused because it exceeds a cost guard."""


class SingularSystemError(TreecrossError):
    """The exact linear system is rank deficient."""
