"""Exception hierarchy. Every public failure mode maps onto one of these."""


class QsvtkitError(Exception):
    """Base class for all library errors."""


class ValidationError(QsvtkitError):
    """An input violates a structural precondition (non-unitary, non-projection, ...).

    Carries the measured defect in ``residual`` when available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DomainError(QsvtkitError):
    """An argument lies outside the supported domain or validity window."""


class ConvergenceError(QsvtkitError):
    """An iterative kernel failed to converge; ``residual`` holds its last defect."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NormError(QsvtkitError):
    """An operator-norm precondition failed; ``norm`` is the measured value."""

    def __init__(self, message, norm=None):
        super().__init__(message)
        self.norm = norm


class OverflowRegimeError(QsvtkitError):
    """Result exceeds double range; ``scaled`` holds an exponentially scaled value."""

    def __init__(self, message, scaled=None):
        super().__init__(message)
        self.scaled = scaled


class EvaluationError(QsvtkitError):
    """A user-supplied function returned a non-finite value; ``index`` is the node."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotAchievableError(QsvtkitError):
    """A polynomial pair fails the achievability conditions beyond tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotCompletableError(QsvtkitError):
    """A real pair cannot be completed; ``point`` is a witness of the violation."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ConstantTooSmallError(QsvtkitError):
    """A configured constant failed its runtime validation grid."""
