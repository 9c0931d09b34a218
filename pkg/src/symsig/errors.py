"""Exception hierarchy.

Input problems, resource exhaustion and internal inconsistencies are kept in
separate branches so the CLI can map them onto distinct exit codes.
"""


class SymsigError(Exception):
    """Base class for every error raised by the package."""


class InputError(SymsigError):
    """Malformed or unsupported user input (CLI exit code 2)."""


class PolynomialSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(InputError):
    def __init__(self, name):
        super().__init__(f"unknown variable {name!r}")
        self.name = name


class BadCoefficient(InputError):
    pass


class FieldMismatch(InputError, TypeError):
    pass


class DivisionByZero(SymsigError, ZeroDivisionError):
    pass


class NonInvertibleDenominator(InputError, ZeroDivisionError):
    pass


class DegreeNotInvertible(InputError):
    pass


class SingularGenerator(InputError):
    pass


class HypothesisFailed(SymsigError):
    def __init__(self, check, detail=""):
        super().__init__(f"hypothesis failed: {check}" + (f" ({detail})" if detail else ""))
        self.check = check
        self.detail = detail


class NotSmall(HypothesisFailed):
    def __init__(self, witness):
        super().__init__("small", "group contains a pseudo-reflection")
        self.witness = witness


class CharacteristicDividesOrder(HypothesisFailed):
    def __init__(self, char, order):
        super().__init__("coprime", f"characteristic {char} divides |G| = {order}")
        self.char = char
        self.order = order


class ResourceLimitExceeded(SymsigError):
    """A configured work budget ran out (CLI exit code 3)."""


class ClosureCapExceeded(ResourceLimitExceeded):
    def __init__(self, cap):
        super().__init__(f"group closure exceeded {cap} elements")
        self.cap = cap


class InternalConsistencyError(SymsigError):
    """Two computations that must agree did not (CLI exit code 4)."""


class DisagreementBetweenMethods(InternalConsistencyError):
    pass


class NonIntegerCoefficient(InternalConsistencyError):
    pass
