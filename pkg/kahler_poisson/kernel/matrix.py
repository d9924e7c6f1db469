"""Dense matrices over RingElem, including product-ring entries."""

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from . import DimensionException, RingMismatchException
from .ring import Ring, RingElem


@dataclass(frozen=True)
class Matrix:
    """Immutable rows × cols matrix whose entries share one ring."""

    ring: Ring
    rows: tuple[tuple[RingElem, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise DimensionException("Expected a non-empty matrix")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise DimensionException(f"Expected rows of length {width}, got {len(row)}")
            for entry in row:
                if entry.ring != self.ring:
                    raise RingMismatchException(
                        f"Expected entries of {self.ring}, got entry of {entry.ring}"
                    )

    @classmethod
    def of(cls, rows: Sequence[Sequence[RingElem]]) -> "Matrix":
        """Build a matrix, taking the ring from its first entry."""
        if not rows or not rows[0]:
            raise DimensionException("Expected a non-empty matrix")
        return cls(rows[0][0].ring, tuple(tuple(row) for row in rows))

    @classmethod
    def build(cls, ring: Ring, nrows: int, ncols: int, entry: Callable[[int, int], RingElem]) -> "Matrix":
        """Build a matrix from an entry function."""
        return cls(ring, tuple(tuple(entry(i, j) for j in range(ncols)) for i in range(nrows)))

    @classmethod
    def identity(cls, ring: Ring, size: int) -> "Matrix":
        """Identity matrix."""
        return cls.build(ring, size, size, lambda i, j: ring.one if i == j else ring.zero)

    @classmethod
    def block_diagonal(cls, ring: Ring, upper: "Matrix", lower: "Matrix") -> "Matrix":
        """Block diagonal matrix; both blocks must already be over ring."""
        size = upper.nrows + lower.nrows
        split = upper.nrows

        def entry(i: int, j: int) -> RingElem:
            if i < split and j < split:
                return upper[i, j]
            if i >= split and j >= split:
                return lower[i - split, j - split]
            return ring.zero

        return cls.build(ring, size, size, entry)

    @property
    def nrows(self) -> int:
        """Number of rows."""
        return len(self.rows)

    @property
    def ncols(self) -> int:
        """Number of columns."""
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        """True for square matrices."""
        return self.nrows == self.ncols

    def __getitem__(self, index: tuple[int, int]) -> RingElem:
        i, j = index
        return self.rows[i][j]

    def __iter__(self) -> Iterator[tuple[RingElem, ...]]:
        return iter(self.rows)

    def entries(self) -> Iterator[tuple[int, int, RingElem]]:
        """Row-major scan of (i, j, entry)."""
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                yield i, j, entry

    def map(self, function: Callable[[RingElem], RingElem]) -> "Matrix":
        """Apply a function entrywise; the result ring is taken from the new entries."""
        return Matrix.of([[function(entry) for entry in row] for row in self.rows])

    def transpose(self) -> "Matrix":
        """Transposed matrix."""
        return Matrix.build(self.ring, self.ncols, self.nrows, lambda i, j: self[j, i])

    def scale(self, factor: RingElem) -> "Matrix":
        """Multiply every entry by a ring element."""
        return Matrix.build(self.ring, self.nrows, self.ncols, lambda i, j: factor * self[i, j])

    def _expect_shape(self, other: "Matrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionException(
                f"Expected {self.nrows}x{self.ncols} matrix, got {other.nrows}x{other.ncols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._expect_shape(other)
        return Matrix.build(self.ring, self.nrows, self.ncols, lambda i, j: self[i, j] + other[i, j])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._expect_shape(other)
        return Matrix.build(self.ring, self.nrows, self.ncols, lambda i, j: self[i, j] - other[i, j])

    def __neg__(self) -> "Matrix":
        return Matrix.build(self.ring, self.nrows, self.ncols, lambda i, j: -self[i, j])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionException(
                f"Expected {self.ncols} rows on the right, got {other.nrows}"
            )

        def entry(i: int, j: int) -> RingElem:
            total = self.ring.zero
            for k in range(self.ncols):
                left = self[i, k]
                if left:
                    total += left * other[k, j]
            return total

        return Matrix.build(self.ring, self.nrows, other.ncols, entry)

    def apply(self, vector: Sequence[RingElem]) -> tuple[RingElem, ...]:
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise DimensionException(f"Expected vector of length {self.ncols}, got {len(vector)}")
        return tuple(
            sum((entry * value for entry, value in zip(row, vector, strict=True)), self.ring.zero)
            for row in self.rows
        )

    @property
    def is_zero(self) -> bool:
        """True if every entry vanishes."""
        return not any(entry for row in self.rows for entry in row)

    def first_nonzero(self) -> tuple[int, int] | None:
        """Row-major position of the first nonzero entry."""
        for i, j, entry in self.entries():
            if entry:
                return i, j
        return None

    def is_symmetric(self) -> bool:
        """True if the matrix equals its transpose."""
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.nrows) for j in range(i + 1, self.ncols)
        )

    def determinant(self) -> RingElem:
        """Determinant by cofactor expansion along the first row."""
        if not self.is_square:
            raise DimensionException(f"Expected square matrix, got {self.nrows}x{self.ncols}")
        if self.nrows == 1:
            return self[0, 0]
        total = self.ring.zero
        for j in range(self.ncols):
            if not self[0, j]:
                continue
            minor = Matrix.build(
                self.ring,
                self.nrows - 1,
                self.ncols - 1,
                lambda r, c, j=j: self[r + 1, c if c < j else c + 1],
            )
            term = self[0, j] * minor.determinant()
            total = total - term if j % 2 else total + term
        return total

    def __str__(self) -> str:
        return format_matrix(self)


def format_matrix(matrix: Matrix, indent: str = "") -> str:
    """Row-major text with entries aligned per column."""
    cells = [[str(entry) for entry in row] for row in matrix.rows]
    widths = [max(len(row[j]) for row in cells) for j in range(matrix.ncols)]
    lines = [
        "[" + ", ".join(cell.rjust(width) for cell, width in zip(row, widths, strict=True)) + "]"
        for row in cells
    ]
    if len(lines) == 1:
        return f"[{lines[0]}]"
    body = f",\n{indent}  ".join(lines)
    return f"[\n{indent}  {body}\n{indent}]"
