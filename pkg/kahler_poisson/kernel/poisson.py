"""Poisson structures on finitely generated algebras."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from . import DimensionException, RingMismatchException, StructureException
from .matrix import Matrix
from .ring import Ring, RingElem, gradient
from .verdict import PASS, Status, Verdict, Witness

_LOGGER = logging.getLogger(__name__)


def check_antisymmetry(matrix: Matrix) -> Verdict:
    """Check P^ij + P^ji = 0 and P^ii = 0, scanning the upper triangle row by row."""
    if not matrix.is_square:
        raise DimensionException(f"Expected square matrix, got {matrix.nrows}x{matrix.ncols}")
    for i in range(matrix.nrows):
        for j in range(i, matrix.ncols):
            residual = matrix[i, i] if i == j else matrix[i, j] + matrix[j, i]
            if residual:
                return Verdict(Status.FAIL, Witness((i + 1, j + 1), residual))
    return PASS


def jacobiator(matrix: Matrix, i: int, j: int, k: int) -> RingElem:
    """J^ijk = sum over l of P^il d_l P^jk + P^jl d_l P^ki + P^kl d_l P^ij."""
    total = matrix.ring.zero
    for first, second, third in ((i, j, k), (j, k, i), (k, i, j)):
        for index, derivative in enumerate(gradient(matrix[second, third])):
            if derivative:
                total += matrix[first, index] * derivative
    return total


def check_jacobi(matrix: Matrix) -> Verdict:
    """Check that the Jacobiator vanishes for all i < j < k.

    The matrix must be antisymmetric and indexed by the generators of its ring.
    """
    size = matrix.nrows
    if not matrix.is_square or size != matrix.ring.ngens:
        raise DimensionException(
            f"Expected {matrix.ring.ngens}x{matrix.ring.ngens} structure matrix, got {matrix.nrows}x{matrix.ncols}"
        )
    for i in range(size):
        for j in range(i + 1, size):
            for k in range(j + 1, size):
                residual = jacobiator(matrix, i, j, k)
                if residual:
                    return Verdict(Status.FAIL, Witness((i + 1, j + 1, k + 1), residual))
    return PASS


@dataclass(frozen=True)
class PoissonStructure:
    """Ring tag plus structure matrix P^ij = {x^i, x^j}.

    Antisymmetry is always enforced. The Jacobi identity is enforced unless
    the structure was created with assumed=True.
    """

    ring: Ring
    matrix: Matrix
    localized: tuple[RingElem, ...] = ()
    assumed: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.matrix.ring != self.ring:
            raise RingMismatchException(
                f"Expected structure matrix over {self.ring}, got {self.matrix.ring}"
            )
        if self.matrix.nrows != self.ring.ngens:
            raise DimensionException(
                f"Expected {self.ring.ngens}x{self.ring.ngens} structure matrix, got {self.matrix.nrows}x{self.matrix.ncols}"
            )
        for element in self.localized:
            if element.ring != self.ring:
                raise RingMismatchException(f"Expected localized element of {self.ring}")
        verdict = check_antisymmetry(self.matrix)
        if verdict.witness is not None:
            raise StructureException(
                f"Expected antisymmetric structure matrix, got residual {verdict.witness}"
            )
        if self.assumed:
            _LOGGER.debug("Jacobi identity assumed for structure on %s", self.ring)
            return
        verdict = check_jacobi(self.matrix)
        if verdict.witness is not None:
            raise StructureException(
                f"Expected Jacobi identity, got Jacobiator {verdict.witness}"
            )

    @classmethod
    def from_brackets(
        cls,
        ring: Ring,
        brackets: Mapping[tuple[int, int], RingElem],
        *,
        localized: Sequence[RingElem] = (),
        assumed: bool = False,
    ) -> "PoissonStructure":
        """Build a structure from brackets {x^i, x^j} for i != j; omitted pairs are 0."""
        entries = [[ring.zero] * ring.ngens for _ in range(ring.ngens)]
        for (i, j), value in brackets.items():
            if i == j:
                raise StructureException(f"Expected distinct generators in bracket, got ({i + 1}, {i + 1})")
            entries[i][j] = value
            entries[j][i] = -value
        return cls(ring, Matrix.of(entries), tuple(localized), assumed)

    @property
    def size(self) -> int:
        """Number of generators."""
        return self.ring.ngens

    def bracket(self, a: RingElem, b: RingElem) -> RingElem:
        """{a, b} = sum over i, j of d_i a P^ij d_j b."""
        for element in (a, b):
            if element.ring != self.ring:
                raise RingMismatchException(
                    f"Expected element of {self.ring}, got element of {element.ring}"
                )
        return self._contract(gradient(a), gradient(b))

    def _contract(self, left: Sequence[RingElem], right: Sequence[RingElem]) -> RingElem:
        total = self.ring.zero
        for i, da in enumerate(left):
            if not da:
                continue
            for j, db in enumerate(right):
                entry = self.matrix[i, j]
                if db and entry:
                    total += da * entry * db
        return total

    def bracket_matrix(self, elements: Sequence[RingElem]) -> Matrix:
        """Matrix of brackets {e^i, e^j} of the given elements."""
        if tuple(elements) == self.ring.generators:
            return self.matrix
        gradients = [gradient(element) for element in elements]
        return Matrix.build(
            self.ring,
            len(elements),
            len(elements),
            lambda i, j: self._contract(gradients[i], gradients[j]),
        )

    @cached_property
    def is_zero(self) -> bool:
        """True if every bracket vanishes."""
        return self.matrix.is_zero


def bracket(structure: PoissonStructure, a: RingElem, b: RingElem) -> RingElem:
    """Bracket of two elements of the structure's ring."""
    return structure.bracket(a, b)
