"""Exception types shared across the package."""

from __future__ import annotations


class PeakSprError(Exception):
    pass


class CycleDetected(PeakSprError):
    def __init__(self, witness: list):
        self.witness = witness
        super().__init__("cover relation has a cycle: " + " < ".join(map(str, witness)))


class UnknownLabel(PeakSprError):
    pass


class NotConnected(PeakSprError):
    pass


class DimensionMismatch(PeakSprError):
    pass


class NotTypeA(PeakSprError):
    pass


class ShapeMismatch(PeakSprError):
    pass


class InvariantViolated(PeakSprError):
    pass


class KappaNotPositive(PeakSprError):
    def __init__(self, witness, value):
        self.witness = witness
        self.value = value
        super().__init__(f"kappa is {value} on {sorted(witness, key=str)}")


class NotSemistable(PeakSprError):
    pass


class InvalidAlien(PeakSprError):
    pass


class NotSpSegment(PeakSprError):
    pass


class NotSincere(PeakSprError):
    pass


class BoundaryAngle(PeakSprError):
    def __init__(self, support, value):
        self.support = support
        self.value = value
        super().__init__(f"central charge {value} on {sorted(support, key=str)} lies on the half-plane boundary")


class ParseError(PeakSprError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
