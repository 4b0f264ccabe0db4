"""Exception hierarchy.

Every domain error carries a ``code`` (the class name) which the CLI prints as
``error=<code>``.  :class:`ParseError` is kept apart because it maps to a
different exit status.
"""
from __future__ import annotations


class DomainError(Exception):
    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


# exact linear algebra
class DimMismatch(DomainError):
    pass


class NotContained(DomainError):
    pass


class NotChainCompatible(DomainError):
    pass


class Inconsistent(DomainError):
    pass


# complexes
class InvalidComplex(DomainError):
    pass


class UnknownId(DomainError):
    pass


class NotBoundaryClosed(DomainError):
    pass


# hodge
class DegreeOutOfRange(DomainError):
    pass


class InvalidWeights(DomainError):
    pass


class AsymmetricWeights(DomainError):
    pass


# flat ends
class NotUnimodular(DomainError):
    pass


class CapExceeded(DomainError):
    pass


class NonIntegerAverage(DomainError):
    pass


class ParabolicEnd(DomainError):
    pass


class OddDimension(DomainError):
    pass


class InvalidEnd(DomainError):
    pass


# models
class InvalidSpec(DomainError):
    pass


class NotAnEndModel(DomainError):
    pass
