"""Build state-space realizations from transfer matrices.

Each nonzero entry gets a companion-form block; the MIMO model is the
block-diagonal direct sum with B routing each block to its input column
and C collecting each block into its output row.  The construction is
deliberately nonminimal; see the structure module for reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PropernessError
from .matrices import Matrix
from .ratfunc import RationalFunction, format_rational
from .statespace import StateSpace
from .tfparse import TransferMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SisoRealization:
    """Companion-form realization of a single strictly proper entry.

    A carries the negated denominator coefficients in its last row and
    an identity block above the diagonal; b = (0, ..., 0, 1)^T; c holds
    the numerator coefficients, ascending, padded with zeros.
    """

    A: Matrix
    b: Matrix
    c: Matrix
    source: RationalFunction

    @property
    def n(self) -> int:
        return self.A.rows


def realize_siso(g: RationalFunction) -> SisoRealization:
    """Companion realization of one strictly proper rational function.

    Raises PropernessError when deg num >= deg den, and also for
    constants (deg den = 0), which have no state to carry them.
    """
    if not g.is_strictly_proper or g.den.degree == 0:
        raise PropernessError(
            f"entry {format_rational(g)} is not realizable without feed-through: "
            "need deg(num) < deg(den) and deg(den) >= 1"
        )
    n = g.den.degree
    den = g.den.coeffs  # monic by normalization
    a_rows = [
        [_ONE if j == i + 1 else _ZERO for j in range(n)] for i in range(n - 1)
    ]
    a_rows.append([-den[j] for j in range(n)])
    b_col = [[_ZERO] for _ in range(n - 1)] + [[_ONE]]
    num = g.num.coeffs
    c_row = [num[j] if j < len(num) else _ZERO for j in range(n)]
    return SisoRealization(
        A=Matrix(a_rows, cols=n),
        b=Matrix(b_col, cols=1),
        c=Matrix([c_row], cols=n),
        source=g,
    )


def realize_mimo(G: TransferMatrix) -> StateSpace:
    """Assemble the direct-sum realization of a transfer matrix.

    Entries are visited input-major (j outer, i inner); identically zero
    entries contribute no block.  Any entry that is not strictly proper
    raises PropernessError naming its 1-based (row, column).
    """
    m, r = G.rows, G.cols
    blocks: list[tuple[int, int, SisoRealization]] = []
    for j in range(r):
        for i in range(m):
            entry = G[i, j]
            if entry.is_zero:
                continue
            try:
                siso = realize_siso(entry)
            except PropernessError as exc:
                raise PropernessError(
                    f"entry ({i + 1},{j + 1}) = {format_rational(entry)} "
                    "is not strictly proper",
                    entry=(i + 1, j + 1),
                ) from exc
            blocks.append((i, j, siso))
    n = sum(s.n for _, _, s in blocks)
    a = Matrix.block_diag([s.A for _, _, s in blocks]) if blocks else Matrix([], cols=0)
    b_grid = [[_ZERO] * r for _ in range(n)]
    c_grid = [[_ZERO] * n for _ in range(m)]
    offset = 0
    for i, j, siso in blocks:
        for k in range(siso.n):
            b_grid[offset + k][j] = siso.b[k, 0]
            c_grid[i][offset + k] = siso.c[0, k]
        offset += siso.n
    return StateSpace(
        A=a,
        B=Matrix(b_grid, cols=r),
        C=Matrix(c_grid, cols=n),
    )
