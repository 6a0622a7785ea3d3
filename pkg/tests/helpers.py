"""Shared oracles and seeded generators for the test suite.

The oracles here are written independently of the library code paths
they check: rank by plain textbook elimination, determinants by
cofactor expansion, minimal dimension by residue ranks.  Keep them
boring on purpose.
"""

from __future__ import annotations

import random
from fractions import Fraction

from realizer import Matrix, Polynomial, RationalFunction, StateSpace, TransferMatrix


# --- oracles ----------------------------------------------------------------


def ref_rank(rows) -> int:
    """Forward elimination over Fractions, counting pivots."""
    grid = [[Fraction(x) for x in row] for row in rows]
    if not grid or not grid[0]:
        return 0
    rank = 0
    for col in range(len(grid[0])):
        src = None
        for i in range(rank, len(grid)):
            if grid[i][col] != 0:
                src = i
                break
        if src is None:
            continue
        grid[rank], grid[src] = grid[src], grid[rank]
        for i in range(len(grid)):
            if i != rank and grid[i][col] != 0:
                f = grid[i][col] / grid[rank][col]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[rank])]
        rank += 1
        if rank == len(grid):
            break
    return rank


def frac_det(rows) -> Fraction:
    """Determinant by elimination, tracking row swaps."""
    grid = [[Fraction(x) for x in row] for row in rows]
    n = len(grid)
    sign = 1
    det = Fraction(1)
    for col in range(n):
        src = next((i for i in range(col, n) if grid[i][col] != 0), None)
        if src is None:
            return Fraction(0)
        if src != col:
            grid[col], grid[src] = grid[src], grid[col]
            sign = -sign
        det *= grid[col][col]
        for i in range(col + 1, n):
            if grid[i][col] != 0:
                f = grid[i][col] / grid[col][col]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[col])]
    return sign * det


def poly_det(entries: list[list[Polynomial]]) -> Polynomial:
    """Cofactor-expansion determinant of a polynomial matrix."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = Polynomial()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in entries[1:]]
        term = entries[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def char_matrix(a: Matrix) -> list[list[Polynomial]]:
    """The polynomial matrix sI - A."""
    n = a.rows
    return [
        [
            Polynomial([-a[i, j], 1]) if i == j else Polynomial([-a[i, j]])
            for j in range(n)
        ]
        for i in range(n)
    ]


def sylvester_resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Resultant via the Sylvester matrix; nonzero iff coprime."""
    dp, dq = p.degree, q.degree
    size = dp + dq
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for shift in range(dq):
        rows.append([Fraction(0)] * shift + pc + [Fraction(0)] * (size - shift - dp - 1))
    for shift in range(dp):
        rows.append([Fraction(0)] * shift + qc + [Fraction(0)] * (size - shift - dq - 1))
    return frac_det(rows)


def mat_poly_eval(p: Polynomial, a: Matrix) -> Matrix:
    """p(A) by Horner on matrices."""
    acc = Matrix.zeros(a.rows, a.cols)
    eye = Matrix.identity(a.rows)
    for c in reversed(p.coeffs):
        acc = acc @ a + c * eye
    return acc


def residue_rank_sum(G: TransferMatrix, poles: list[Fraction]) -> int:
    """Gilbert's bound: sum of residue-matrix ranks over the given
    simple poles.  Equals the minimal dimension when every pole of G is
    simple and listed."""
    total = 0
    for p in poles:
        res = [
            [simple_residue(G[i, j], p) for j in range(G.cols)]
            for i in range(G.rows)
        ]
        total += ref_rank(res)
    return total


def simple_residue(f: RationalFunction, p: Fraction) -> Fraction:
    """Residue of f at a simple pole p (0 when p is not a pole of f)."""
    if f.den(p) != 0:
        return Fraction(0)
    quotient, remainder = divmod(f.den, Polynomial([-p, 1]))
    assert remainder == Polynomial(), "p must be a root of the denominator"
    value = quotient(p)
    assert value != 0, "pole must be simple"
    return f.num(p) / value


# --- seeded generators ------------------------------------------------------


def rand_fraction(rng: random.Random, lo: int = -5, hi: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_poly(rng: random.Random, max_degree: int, nonzero: bool = False) -> Polynomial:
    degree = rng.randint(0, max_degree)
    coeffs = [rand_fraction(rng) for _ in range(degree + 1)]
    p = Polynomial(coeffs)
    if nonzero and p.is_zero:
        return Polynomial([Fraction(1)] + coeffs[1:])
    return p


def rand_monic(rng: random.Random, degree: int) -> Polynomial:
    return Polynomial([rand_fraction(rng) for _ in range(degree)] + [Fraction(1)])


def rand_strictly_proper(rng: random.Random, max_degree: int = 4) -> RationalFunction:
    d = rng.randint(1, max_degree)
    den = rand_monic(rng, d)
    num = Polynomial([rand_fraction(rng) for _ in range(d)])  # degree <= d-1
    return RationalFunction(num, den)


def rand_transfer(
    rng: random.Random,
    max_rows: int = 3,
    max_cols: int = 3,
    max_degree: int = 4,
    zero_prob: float = 0.2,
) -> TransferMatrix:
    m, r = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return TransferMatrix(
        [
            [
                RationalFunction.zero()
                if rng.random() < zero_prob
                else rand_strictly_proper(rng, max_degree)
                for _ in range(r)
            ]
            for _ in range(m)
        ]
    )


def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def rand_nonsingular(rng: random.Random, n: int) -> Matrix:
    if n == 0:
        return Matrix([], cols=0)
    while True:
        m = rand_matrix(rng, n, n)
        if frac_det(m.row_lists()) != 0:
            return m


def rand_statespace(
    rng: random.Random,
    max_n: int = 5,
    max_inputs: int = 2,
    max_outputs: int = 2,
    degenerate: bool = False,
) -> StateSpace:
    """Random integer system; degenerate mode biases toward rank loss."""
    n = rng.randint(0 if degenerate else 1, max_n)
    r = rng.randint(1, max_inputs)
    m = rng.randint(1, max_outputs)
    a = rand_matrix(rng, n, n, -2, 2)
    b = rand_matrix(rng, n, r, -2, 2)
    c = rand_matrix(rng, m, n, -2, 2)
    if degenerate and n > 0:
        style = rng.randrange(4)
        if style == 0:
            b = Matrix.zeros(n, r)
        elif style == 1:
            c = Matrix.zeros(m, n)
        elif style == 2:
            # block-triangular A decouples the trailing states from B
            cut = rng.randint(1, n)
            grid = a.row_lists()
            for i in range(cut, n):
                for j in range(cut):
                    grid[i][j] = Fraction(0)
            a = Matrix(grid)
            bg = b.row_lists()
            for i in range(cut, n):
                for j in range(r):
                    bg[i][j] = Fraction(0)
            b = Matrix(bg) if n else b
    return StateSpace(A=a, B=Matrix(b.row_lists(), cols=r), C=Matrix(c.row_lists(), cols=n))
