"""Exception hierarchy shared by every graevkit module."""

from __future__ import annotations


class GraevError(ValueError):
    """Base class for all input and precondition errors raised by graevkit."""


class MetricViolation(GraevError):
    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} axiom violated at {self.witness}")


class DuplicatePoint(GraevError):
    def __init__(self, point: str):
        self.point = point
        super().__init__(f"duplicate point {point!r}")


class MissingDistance(GraevError):
    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"missing distance for ({a}, {b})")


class UnknownPoint(GraevError):
    def __init__(self, point: str):
        self.point = point
        super().__init__(f"unknown point {point!r}")


class NonpositiveScale(GraevError):
    pass


class UnknownFamily(GraevError):
    pass


class EmptyIndexSet(GraevError):
    pass


class LengthOutOfRange(GraevError):
    pass


class LengthOverBound(GraevError):
    pass


class LengthMismatch(GraevError):
    pass


class NotInB(GraevError):
    pass


class EmptyWord(GraevError):
    pass


class NotAdmissible(GraevError):
    pass


class InadmissibleScale(GraevError):
    pass


class FamilyTooShallow(GraevError):
    def __init__(self, n: int, depth: int):
        self.n = n
        self.depth = depth
        super().__init__(f"family depth {depth} has no twin pair fine enough for n={n}")


class NotLengthTwo(GraevError):
    pass


class UnbalancedExponents(GraevError):
    pass


class UnknownToken(GraevError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown token {token!r}")


class ParseError(GraevError):
    """Malformed input text; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
