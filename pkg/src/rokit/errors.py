"""Exception types shared across the library."""


class RokitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(RokitError):
    """Operands have incompatible shapes."""


class SingularMatrix(RokitError):
    """A pivot fell below the singularity threshold during elimination."""


class MissingCapability(RokitError):
    """An operation requires a callback the system does not provide."""


class NonFiniteOutput(RokitError):
    """A NaN or Inf appeared in a computed quantity."""


class ZeroInitialVector(RokitError):
    """The Arnoldi seed vector has zero norm (autonomous equilibrium)."""


class NotAutonomous(RokitError):
    """Operation defined only for autonomous (time-independent) bases."""


class SingularReducedSystem(RokitError):
    """The reduced stage matrix (I - h*gamma*H) is numerically singular."""


class StepSizeUnderflow(RokitError):
    """The adaptive controller cannot shrink the step any further."""


class SingularAtZ(RokitError):
    """Stability function evaluated at a pole of the resolvent."""


class UnknownProblem(RokitError):
    """Benchmark problem name is not in the registry."""


class UnknownMethod(RokitError):
    """Method name is not in the tableau registry."""


class ReferenceDisagreement(RokitError):
    """The two reference solvers disagree beyond the acceptance gate."""


class InsufficientRows(RokitError):
    """Too few usable rows to fit a convergence order."""
