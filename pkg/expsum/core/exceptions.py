"""Exception hierarchy shared by the services and the command line."""


class ExpSumError(Exception):
    """Base class for all errors raised by expsum."""


class ValidationError(ExpSumError, ValueError):
    """Invalid input or violated precondition."""


class NumericalError(ExpSumError):
    """A numerical step could not produce a trustworthy result."""


class ConvergenceError(NumericalError):
    pass


class RankDeficiencyError(NumericalError):
    pass


class PoleComputationError(NumericalError):
    pass


class QuadratureError(NumericalError):
    pass


class RecoveryError(NumericalError):
    """Parameter back-map failed (degenerate residues, missing periodic index, ...)."""
