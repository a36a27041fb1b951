"""Exception types raised across the package."""


class CyclotileError(Exception):
    """Base class for all package errors."""


class NonPrime(CyclotileError, ValueError):
    pass


class NotDistinct(CyclotileError, ValueError):
    pass


class EmptySet(CyclotileError, ValueError):
    pass


class PreconditionViolated(CyclotileError, ValueError):
    pass


class InternalContradiction(CyclotileError, RuntimeError):
    """A state the mathematics rules out was reached; indicates a bug."""


class BadIndexResidues(CyclotileError, ValueError):
    pass


class WrongCardinality(CyclotileError, ValueError):
    pass


class NotSumsetForm(CyclotileError, ValueError):
    pass


class NotDisjoint(CyclotileError, ValueError):
    pass


class NotInvariant(CyclotileError, ValueError):
    pass


class ZeroInH(CyclotileError, ValueError):
    pass


class DivOneViolation(CyclotileError, ValueError):
    pass


class FormMismatch(CyclotileError, ValueError):
    pass


class GenerationFailed(CyclotileError, RuntimeError):
    pass


class ParseError(CyclotileError, ValueError):
    pass


class ModulusMismatch(CyclotileError, ValueError):
    pass


class BudgetExceeded(CyclotileError, TimeoutError):
    """Search ran out of time.

    ``partial`` carries whatever was gathered before the deadline (a list of
    solutions or a partial report, depending on the raiser).
    """

    def __init__(self, message="time budget exceeded", partial=None):
        super().__init__(message)
        self.partial = partial
