"""Exception hierarchy shared by every module of the package."""


class PosetDerivedError(Exception):
    """Base class for all errors raised by posetderived."""


class PosetError(PosetDerivedError, ValueError):
    pass


class DuplicateLabel(PosetError):
    pass


class UnknownLabel(PosetError):
    pass


class CycleDetected(PosetError):
    pass


class EmptyPoset(PosetError):
    pass


class BadProbability(PosetError):
    pass


class LinAlgError(PosetDerivedError, ValueError):
    pass


class NotSquare(LinAlgError):
    pass


class NotUnimodular(LinAlgError):
    pass


class NotPrime(LinAlgError):
    pass


class SizeMismatch(LinAlgError):
    pass


class FieldMismatch(LinAlgError):
    pass


class RingMismatch(LinAlgError):
    pass


class SheafError(PosetDerivedError, ValueError):
    pass


class MissingElement(SheafError):
    pass


class NotClosed(SheafError):
    pass


class ElementOnWrongSide(SheafError):
    pass


class BaseMismatch(SheafError):
    pass


class NotCommutative(SheafError):
    pass


class ConstructionError(PosetDerivedError, ValueError):
    pass


class EmptyList(ConstructionError):
    pass


class MissingComponent(ConstructionError):
    pass


class EmptyComponent(ConstructionError):
    pass


class NotBipartite(ConstructionError):
    pass


class PosetSyntaxError(PosetDerivedError, ValueError):
    """Malformed poset file; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message, line=0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
