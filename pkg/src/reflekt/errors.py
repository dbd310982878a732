"""Exception hierarchy for the reflekt library."""


class ReflektError(Exception):
    """Base class for all reflekt errors."""


class DivisionByZero(ReflektError, ZeroDivisionError):
    pass


class ConductorLimit(ReflektError):
    """Conductor of a cyclotomic number exceeded the hard cap."""


class ParseError(ReflektError, ValueError):
    pass


class NotSquare(ReflektError):
    pass


class DimensionMismatch(ReflektError):
    pass


class CapExceeded(ReflektError):
    """Group closure would exceed the element cap."""


class NotFinite(ReflektError):
    """A generator (or element) has order beyond the order bound."""


class NotSubgroup(ReflektError):
    pass


class NotNormal(ReflektError):
    pass


class NotReflectionGroup(ReflektError):
    pass


class BoundTooSmall(ReflektError):
    """Degree bound too small to finish a generator/relation computation."""


class SpanViolation(ReflektError):
    """A group element moved a fixed invariant outside its chosen span."""


class NotGood(ReflektError):
    pass


class ContainsReflection(ReflektError):
    pass


class IndexNotPrime(ReflektError):
    pass


class NotNormalizing(ReflektError):
    pass


class NonPrincipalUnsupported(ReflektError):
    pass


class UnknownName(ReflektError, KeyError):
    pass


class SelfCheckFailed(ReflektError):
    pass


class MalformedDiagram(ReflektError):
    pass


class RuleMismatch(ReflektError):
    pass


class CosetLimitExceeded(ReflektError):
    """Coset enumeration ran out of table space (inconclusive)."""


class UnknownCommand(ReflektError):
    pass
