"""Exception types shared across the solver suite.

The hierarchy mirrors the failure modes of the solvers: bad inputs,
saturation of the quasi-linear denominator, iteration failures, and
accuracy aborts during time evolution.
"""


class QuasisolError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(QuasisolError, ValueError):
    """An argument is outside its admissible range."""


class NoSolitaryWaveError(InvalidParameterError):
    """Requested frequency at or above the existence threshold 1/(alpha+1)."""


class DenominatorBlowupError(QuasisolError):
    """The saturating denominator 1 - |phi|^(2 alpha) reached zero or below."""


class NoConvergenceError(QuasisolError):
    """An iteration hit its cap before reaching the residual tolerance.

    Attributes
    ----------
    partial : list
        Results accumulated before the failure (may be empty).
    failed_omega : float or None
        Frequency at which a continuation failed, when applicable.
    """

    def __init__(self, message, partial=None, failed_omega=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
        self.failed_omega = failed_omega


class NoSignChangeError(QuasisolError):
    """A bracket does not straddle a sign change of the mass slope."""


class InsufficientWindowError(InvalidParameterError):
    """Fit window too narrow or too few points for an asymptote fit."""


class AccuracyAbortError(QuasisolError):
    """Relative energy drift exceeded the accuracy bar during evolution.

    Attributes
    ----------
    diagnostics : object or None
        Partial diagnostics recorded up to the abort.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics
