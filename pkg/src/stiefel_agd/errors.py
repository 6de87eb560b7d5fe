"""Exception types raised by the library.

Plain contract violations (wrong shapes, invalid parameter ranges) raise
ValueError; the classes below mark numerical failure modes a caller may
want to handle individually.
"""


class StiefelAgdError(Exception):
    """Base class for all library-specific errors."""


class SingularMatrixError(StiefelAgdError):
    """Linear system is singular to working precision."""


class RankDeficientError(StiefelAgdError):
    """Matrix does not have full column rank."""


class NotSymmetricError(StiefelAgdError):
    """Matrix expected to be symmetric is not."""


class RetractionFailedError(StiefelAgdError):
    """Cayley retraction could not be evaluated (solve failed)."""


class InverseRetractionFailedError(StiefelAgdError):
    """Inverse retraction solve failed; the two points are too far apart."""


class DegenerateSpectrumError(StiefelAgdError):
    """Spectrum has a zero gap where a positive one is required."""


class LineSearchFailedError(StiefelAgdError):
    """Line search exhausted its trial budget without satisfying Armijo."""


class DegenerateFitError(StiefelAgdError):
    """Not enough distinct abscissae for a least-squares fit."""
