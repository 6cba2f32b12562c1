"""Exception hierarchy.

Three families matter to callers: bad input (``UsageError``), a theorem's
hypothesis not being met (``HypothesisError``), and resource limits
(``EnumerationCapExceeded``).  The last two are "undecided", never a
negative verdict.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all errors raised by strongiso."""


class UsageError(EngineError, ValueError):
    """Malformed or inconsistent input data."""


class Undecided(EngineError):
    """The implemented theorems do not decide this input."""


class HypothesisError(Undecided):
    """A theorem was invoked outside its hypotheses."""


class SquarefreeHypothesisError(HypothesisError):
    def __init__(self, factor: int, degree: int):
        self.factor = factor
        self.degree = degree
        super().__init__(
            f"factor {factor} is of type A_{degree - 1} with non-squarefree "
            f"degree {degree}; the semisimple quotient criterion needs squarefree degrees"
        )


class EnumerationCapExceeded(Undecided):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"residue group has {size} elements, enumeration cap is {cap}")


class InvalidTorsorError(EngineError):
    """Data that does not describe a torsor of the stated group."""


class AnisotropicBaseError(InvalidTorsorError, HypothesisError):
    """The base form of a type D torsor is anisotropic."""


class TorsorMismatchError(InvalidTorsorError, UsageError):
    """Twisted form with the wrong dimension or discriminant."""
