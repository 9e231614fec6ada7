"""Exception hierarchy; the CLI maps each family to an exit code."""


class CoxHeckeError(Exception):
    exit_code = 1


class UsageError(CoxHeckeError, ValueError):
    """Invalid arguments (bad type tag, non-unit input, ...)."""

    exit_code = 2


class PreconditionError(CoxHeckeError, ValueError):
    """A mathematical hypothesis of the operation does not hold."""

    exit_code = 2


class ConstructionError(PreconditionError):
    """A Coxeter-homomorphism datum violates one of its defining conditions."""


class UnsupportedError(CoxHeckeError):
    """The request is outside the supported regime (modular case, non-sc datum, ...)."""

    exit_code = 2


class ResourceError(CoxHeckeError):
    """An enumeration cap was exceeded."""

    exit_code = 3


class CheckFailed(CoxHeckeError):
    """A verification found a mathematical counterexample."""

    exit_code = 1


class SearchExhaustedError(PreconditionError):
    """A bounded search found nothing."""
