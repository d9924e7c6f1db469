"""Exact kernel for Poisson algebras with metrics and their morphisms."""


class AlgebraException(Exception):
    """Exception raised because an algebraic operation received invalid input."""


class RingMismatchException(AlgebraException):
    """Exception raised because operands live in different rings."""


class DimensionException(AlgebraException):
    """Exception raised because sizes of matrices, image lists or indices disagree."""


class ZeroDenominatorException(AlgebraException):
    """Exception raised because a division or substitution produced a zero denominator."""


class StructureException(AlgebraException):
    """Exception raised because a structure matrix or metric violates its invariants."""


class MorphismException(AlgebraException):
    """Exception raised because a homomorphism is malformed."""


class ConstructionException(AlgebraException):
    """Exception raised because a construction received unusable inputs."""


class UnsupportedException(AlgebraException):
    """Exception raised because a computation has no answer within the supported rings."""


class NonPolynomialImageException(MorphismException):
    """Exception raised because a generator image has a non-constant denominator."""

    def __init__(self, message: str, index: int, image: object) -> None:
        super().__init__(message)
        self.index = index
        self.image = image
