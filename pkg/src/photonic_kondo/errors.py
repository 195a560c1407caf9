"""Exception types raised by the photonic Kondo engine.

Every error carries an ``exit_code`` so the command-line front end can map
failures onto distinct process exit statuses.
"""


class KondoError(ValueError):
    """Base class for all domain errors."""

    exit_code = 9


class ParseError(KondoError):
    exit_code = 2


class InvalidParameter(KondoError):
    exit_code = 3


class NonPositiveOmega3(InvalidParameter):
    pass


class NegativeCoupling(InvalidParameter):
    pass


class AnisotropicCoupling(InvalidParameter):
    """Raised when g_+ != g_- reaches a dynamics entry point."""

    exit_code = 3


class ZeroField(KondoError):
    exit_code = 4


class ZeroEffectiveField(KondoError):
    exit_code = 5


class NoDissipation(KondoError):
    exit_code = 6


class NonUnitVector(KondoError):
    exit_code = 7


class NonUnitDetector(NonUnitVector):
    pass


class DetectorDark(KondoError):
    exit_code = 8


class GridTooNarrow(KondoError):
    exit_code = 9


class StepTooLarge(KondoError):
    exit_code = 9
