"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TCBError(Exception):
    """Base class; ``code`` is the machine-readable error name."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DomainError(TCBError, ValueError):
    """Input lies outside the domain an operation is defined on."""


class InvalidPoint(DomainError):
    pass


class AntipodalInput(DomainError):
    """Slerp between (nearly) antipodal points; the vector-field rule applies instead."""


class AtPole(DomainError):
    pass


class EvenDimension(DomainError):
    """No non-vanishing tangent field on an even-dimensional sphere."""


class OutOfRange(DomainError):
    pass


class DiscontinuousJoin(DomainError):
    def __init__(self, index: int, gap: float):
        super().__init__(f"paths {index} and {index + 1} do not meet (gap {gap:.3e})")
        self.index = index
        self.gap = gap


class EvenN(DomainError):
    pass


class OddN(DomainError):
    pass


class EvenM(DomainError):
    pass


class MissingSteenrod(TCBError, ValueError):
    pass


class ClosureError(TCBError, RuntimeError):
    """A Nakaoka product produced a label outside the legal basis."""


class UnsupportedSpace(TCBError, ValueError):
    pass


class InconsistentBounds(TCBError, RuntimeError):
    pass


class UnknownSuite(TCBError, KeyError):
    pass


class ParseError(TCBError, ValueError):
    def __init__(self, text: str, pos: int, expected: list[str]):
        self.text = text
        self.pos = pos
        self.expected = list(expected)
        super().__init__(
            f"cannot parse {text!r} at position {pos}: expected one of {', '.join(self.expected)}"
        )
