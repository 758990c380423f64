from __future__ import annotations

from typing import Any


class KZError(ValueError):
    """Base class for every failure raised by kz_rational."""


class ZeroDenominator(KZError, ZeroDivisionError):
    pass


class NotExpandable(KZError):
    pass


class SingularMatrix(KZError):
    pass


class InvalidIndices(KZError):
    pass


class EigencheckFailed(KZError):
    pass


class ResonanceObstruction(KZError):
    def __init__(self, message: str, *, index: int | None = None) -> None:
        super().__init__(message)
        self.index = index


class DegeneratePoles(KZError):
    pass


class VerificationFailed(KZError):
    def __init__(self, message: str, *, column: int | None = None, witness: Any = None) -> None:
        super().__init__(message)
        self.column = column
        self.witness = witness


class SingularAtPoint(KZError):
    pass


class DegenerateBasePoints(KZError):
    pass


class SingularCenter(KZError):
    pass


class DegeneratePoint(KZError):
    pass


class BlockFormMismatch(KZError):
    pass


class NotEigenvector(KZError):
    pass


class AsymptoticMismatch(KZError):
    def __init__(self, message: str, *, pair: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


class ParseError(KZError):
    def __init__(self, message: str, *, location: str = "$") -> None:
        super().__init__(f"{location}: {message}")
        self.location = location
