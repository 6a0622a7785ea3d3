"""Dense matrices over exact rationals.

Internal plumbing for the state-space and structural layers: products,
inverses, rank, reduced row echelon form, and null spaces, all computed
with `fractions.Fraction` so there is no tolerance anywhere.  Matrices
are immutable and hashable; empty shapes (0 x k, k x 0) are legal and
show up naturally for 0-state systems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, JsonFormatError, SingularMatrixError
from .ratfunc import as_fraction, fraction_from_json, fraction_to_json

_ZERO = Fraction(0)
_ONE = Fraction(1)

Vector = tuple[Fraction, ...]


class Matrix:
    """Immutable matrix of Fractions, stored as a tuple of row tuples."""

    __slots__ = ("_data", "_rows", "_cols")

    def __init__(self, rows: Iterable[Iterable] = (), *, cols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise DimensionError("rows have unequal lengths")
            if cols is not None and cols != width:
                raise DimensionError(f"rows have {width} entries, expected {cols}")
        else:
            width = 0 if cols is None else cols
            if width < 0:
                raise DimensionError("column count must be nonnegative")
        self._data = data
        self._rows = len(data)
        self._cols = width

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[_ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        """Assemble a matrix whose j-th column is columns[j]."""
        cols = [tuple(as_fraction(x) for x in c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise DimensionError("columns have unequal lengths")
            if rows is not None and rows != height:
                raise DimensionError(f"columns have {height} entries, expected {rows}")
        else:
            if rows is None:
                raise DimensionError("row count required for a matrix with no columns")
            height = rows
        return cls([[c[i] for c in cols] for i in range(height)], cols=len(cols))

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        """Direct sum: blocks along the diagonal, zeros elsewhere."""
        total_r = sum(b.rows for b in blocks)
        total_c = sum(b.cols for b in blocks)
        grid = [[_ZERO] * total_c for _ in range(total_r)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                row = grid[r0 + i]
                for j in range(b.cols):
                    row[c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(grid, cols=total_c)

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self._rows, self._cols

    @property
    def is_square(self) -> bool:
        return self._rows == self._cols

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    @property
    def T(self) -> "Matrix":
        return Matrix(
            [[self._data[i][j] for i in range(self._rows)] for j in range(self._cols)],
            cols=self._rows,
        )

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(self._data[i][j] for i in range(self._rows))

    def row_lists(self) -> list[list[Fraction]]:
        """Mutable copy, for elimination routines."""
        return [list(row) for row in self._data]

    def to_float(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self._data]

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ],
            cols=self._cols,
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self._data], cols=self._cols)

    def __mul__(self, scalar):
        if isinstance(scalar, bool) or not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = as_fraction(scalar)
        return Matrix([[x * s for x in row] for row in self._data], cols=self._cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self._cols != other._rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = [[_ZERO] * other._cols for _ in range(self._rows)]
        # skip zero entries: companion and block-diagonal operands are sparse
        for i in range(self._rows):
            arow = self._data[i]
            orow = out[i]
            for k in range(self._cols):
                aik = arow[k]
                if aik == 0:
                    continue
                brow = other._data[k]
                for j in range(other._cols):
                    if brow[j] != 0:
                        orow[j] += aik * brow[j]
        return Matrix(out, cols=other._cols)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self._rows)), _ZERO)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(
            [[self._data[i][j] for j in col_idx] for i in row_idx],
            cols=len(col_idx),
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self._rows != other._rows:
            raise DimensionError("horizontal stack needs equal row counts")
        return Matrix(
            [ra + rb for ra, rb in zip(self._data, other._data)],
            cols=self._cols + other._cols,
        )

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices.

        Pivoting is deterministic: first nonzero entry scanning down the
        current column, columns left to right.
        """
        grid = self.row_lists()
        pivots: list[int] = []
        r = 0
        for c in range(self._cols):
            pivot = next((i for i in range(r, self._rows) if grid[i][c] != 0), None)
            if pivot is None:
                continue
            grid[r], grid[pivot] = grid[pivot], grid[r]
            inv = 1 / grid[r][c]
            grid[r] = [x * inv for x in grid[r]]
            for i in range(self._rows):
                if i != r and grid[i][c] != 0:
                    factor = grid[i][c]
                    grid[i] = [x - factor * y for x, y in zip(grid[i], grid[r])]
            pivots.append(c)
            r += 1
            if r == self._rows:
                break
        return Matrix(grid, cols=self._cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def null_space(self) -> list[Vector]:
        """Basis of the right null space, one vector per free column.

        Deterministic convention: free columns are taken in ascending
        order and the free coordinate is set to 1.
        """
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis: list[Vector] = []
        for free in range(self._cols):
            if free in pivot_set:
                continue
            vec = [_ZERO] * self._cols
            vec[free] = _ONE
            for r, pc in enumerate(pivots):
                vec[pc] = -reduced[r, free]
            basis.append(tuple(vec))
        return basis

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError("only square matrices can be inverted")
        n = self._rows
        augmented = self.hstack(Matrix.identity(n))
        reduced, pivots = augmented.rref()
        if len(pivots) < n or any(p >= n for p in pivots):
            raise SingularMatrixError("matrix is singular")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def to_json(self) -> list[list]:
        return [[fraction_to_json(x) for x in row] for row in self._data]

    @classmethod
    def from_json(cls, obj, *, cols: int | None = None) -> "Matrix":
        if not isinstance(obj, list) or any(not isinstance(row, list) for row in obj):
            raise JsonFormatError("matrix must be an array of row arrays")
        data = [[fraction_from_json(x) for x in row] for row in obj]
        widths = {len(row) for row in data}
        if len(widths) > 1:
            raise JsonFormatError("matrix rows have unequal lengths")
        return cls(data, cols=cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self._rows, self._cols, self._data))

    def __repr__(self):
        return f"Matrix({[list(map(str, row)) for row in self._data]!r})"

    def __str__(self):
        if self._rows == 0 or self._cols == 0:
            return f"<empty {self._rows}x{self._cols}>"
        cells = [[str(x) for x in row] for row in self._data]
        widths = [max(len(cells[i][j]) for i in range(self._rows)) for j in range(self._cols)]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in cells
        )


class IncrementalSpan:
    """Row-echelon accumulator for exact linear-independence tests.

    Feed vectors one at a time; `add` reports whether the vector enlarged
    the span.  Kept separate from Matrix so Krylov chains and basis
    completion do not re-eliminate from scratch on every candidate.
    """

    def __init__(self, dim: int):
        self._dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []  # (lead index, vector)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vector: Sequence) -> list[Fraction]:
        v = [as_fraction(x) for x in vector]
        if len(v) != self._dim:
            raise DimensionError(f"vector has length {len(v)}, expected {self._dim}")
        for lead, row in self._rows:
            if v[lead] != 0:
                factor = v[lead] / row[lead]
                for i in range(lead, self._dim):
                    v[i] -= factor * row[i]
        return v

    def contains(self, vector: Sequence) -> bool:
        return all(x == 0 for x in self._reduce(vector))

    def add(self, vector: Sequence) -> bool:
        """Insert if independent of the current span; return True if inserted."""
        v = self._reduce(vector)
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        self._rows.append((lead, v))
        self._rows.sort(key=lambda item: item[0])
        return True
