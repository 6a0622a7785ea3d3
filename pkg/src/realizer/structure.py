"""Controllability and observability analysis, Kalman canonical
decomposition, and minimal realization.

Everything here runs on exact rationals: ranks are exact elimination
counts, subspaces carry exact bases, and the zero blocks promised by
the decomposition hold identically, not within a tolerance.  A single
documented helper (`rank_float`) offers tolerance-based rank for users
bringing in measured data; nothing in this module depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, JsonFormatError
from .matrices import IncrementalSpan, Matrix, Vector
from .statespace import StateSpace, similarity_transform
from .ratfunc import as_fraction

_GROUP_KEYS = ("co_bar_o", "co_o", "unc_unobs", "unc_obs")


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^n given by an n x k basis matrix.

    Columns are exactly linearly independent; k may be 0 (the zero
    subspace) or n (the full space).
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise DimensionError(
                f"basis vectors live in R^{self.basis.rows}, "
                f"expected R^{self.ambient_dim}"
            )
        if self.basis.rank() != self.basis.cols:
            raise DimensionError("basis columns are linearly dependent")

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, vector: Sequence) -> bool:
        """Exact membership test."""
        span = IncrementalSpan(self.ambient_dim)
        for j in range(self.basis.cols):
            span.add(self.basis.column(j))
        return span.contains([as_fraction(x) for x in vector])

    def spans_same(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        return self.dim == other.dim and all(
            self.contains(other.basis.column(j)) for j in range(other.basis.cols)
        )


@dataclass(frozen=True)
class KalmanDecomposition:
    """Change of basis splitting the state into four groups.

    ``transform`` is T with x = Tz; ``system`` is the transformed triple;
    ``groups`` lists the z-coordinate indices of the four blocks in
    order: controllable&unobservable, controllable&observable,
    uncontrollable&unobservable, uncontrollable&observable.
    """

    transform: Matrix
    system: StateSpace
    groups: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return tuple(len(g) for g in self.groups)  # type: ignore[return-value]

    def to_json(self) -> dict:
        out = {
            "T": self.transform.to_json(),
            "A": self.system.A.to_json(),
            "B": self.system.B.to_json(),
            "C": self.system.C.to_json(),
            "groups": {key: list(g) for key, g in zip(_GROUP_KEYS, self.groups)},
        }
        if self.system.n == 0:
            out["inputs"] = self.system.inputs
        return out

    @classmethod
    def from_json(cls, obj) -> "KalmanDecomposition":
        if not isinstance(obj, dict):
            raise JsonFormatError(f"decomposition must be an object, got {type(obj).__name__}")
        unknown = set(obj) - {"T", "A", "B", "C", "groups", "inputs"}
        if unknown:
            raise JsonFormatError(f"unknown keys in decomposition: {sorted(unknown)}")
        missing = {"T", "A", "B", "C", "groups"} - set(obj)
        if missing:
            raise JsonFormatError(f"decomposition is missing keys: {sorted(missing)}")
        groups_raw = obj["groups"]
        if not isinstance(groups_raw, dict) or set(groups_raw) != set(_GROUP_KEYS):
            raise JsonFormatError(f"groups must have exactly the keys {list(_GROUP_KEYS)}")
        groups = []
        for key in _GROUP_KEYS:
            idx = groups_raw[key]
            if not isinstance(idx, list) or any(
                not isinstance(i, int) or isinstance(i, bool) for i in idx
            ):
                raise JsonFormatError(f'"{key}" must be an array of indices')
            groups.append(tuple(idx))
        inner = {"A": obj["A"], "B": obj["B"], "C": obj["C"]}
        if "inputs" in obj:
            inner["inputs"] = obj["inputs"]
        return cls(
            transform=Matrix.from_json(obj["T"]),
            system=StateSpace.from_json(inner),
            groups=tuple(groups),
        )


def controllability_matrix(ss: StateSpace) -> Matrix:
    """[B, AB, ..., A^(n-1) B], an n x n*r matrix."""
    out = Matrix([], cols=0) if ss.n == 0 else ss.B
    power = ss.B
    for _ in range(ss.n - 1):
        power = ss.A @ power
        out = out.hstack(power)
    return out


def observability_matrix(ss: StateSpace) -> Matrix:
    """Stack of C, CA, ..., C A^(n-1), an n*m x n matrix.

    Computed as the controllability matrix of the dual, transposed;
    transposition swaps the two notions wholesale.
    """
    return controllability_matrix(dual(ss)).T


def dual(ss: StateSpace) -> StateSpace:
    """(A, B, C) -> (A^T, C^T, B^T); an involution."""
    return StateSpace(A=ss.A.T, B=ss.C.T, C=ss.B.T)


def rank_exact(m: Matrix) -> int:
    """Rank by exact rational elimination; no tolerance anywhere."""
    return m.rank()


def rank_float(rows: Sequence[Sequence[float]], tol: float | None = None) -> int:
    """Numeric rank with partial pivoting, for imported measured data.

    The default tolerance is max(shape) * machine epsilon * max|entry|.
    The exact core never calls this.
    """
    grid = [[float(x) for x in row] for row in rows]
    if not grid or not grid[0]:
        return 0
    n_rows, n_cols = len(grid), len(grid[0])
    if any(len(row) != n_cols for row in grid):
        raise DimensionError("rows have unequal lengths")
    if tol is None:
        biggest = max((abs(x) for row in grid for x in row), default=0.0)
        tol = max(n_rows, n_cols) * sys_eps() * biggest
    rank = 0
    for col in range(n_cols):
        pivot = max(range(rank, n_rows), key=lambda i: abs(grid[i][col]), default=None)
        if pivot is None or abs(grid[pivot][col]) <= tol:
            continue
        grid[rank], grid[pivot] = grid[pivot], grid[rank]
        for i in range(rank + 1, n_rows):
            factor = grid[i][col] / grid[rank][col]
            grid[i] = [x - factor * y for x, y in zip(grid[i], grid[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def sys_eps() -> float:
    return math.ulp(1.0)


def controllable_space(ss: StateSpace) -> Subspace:
    """Span of the controllability matrix, built by per-input chains.

    For each input column b, the powers b, Ab, A^2 b, ... are taken
    while each stays independent of everything accumulated so far (all
    chains pooled); the chain stops at the first dependent power.  That
    early stop is sound because the accumulated set is A-invariant by
    induction, so a dependent power keeps all later powers dependent.
    """
    n = ss.n
    span = IncrementalSpan(n)
    vectors: list[Vector] = []
    for alpha in range(ss.inputs):
        v = ss.B.column(alpha)
        for _ in range(n):
            if not span.add(v):
                break
            vectors.append(v)
            v = _apply(ss.A, v)
    return Subspace(n, Matrix.from_columns(vectors, rows=n))


def observable_space(ss: StateSpace) -> Subspace:
    """Span of the transposed observability matrix's columns."""
    return controllable_space(dual(ss))


def _apply(a: Matrix, v: Vector) -> Vector:
    return tuple(
        sum((a[i, k] * v[k] for k in range(a.cols) if v[k] != 0), Fraction(0))
        for i in range(a.rows)
    )


def orthogonal_complement(space: Subspace) -> Subspace:
    """All vectors orthogonal to the given subspace."""
    kernel = space.basis.T.null_space()
    return Subspace(
        space.ambient_dim,
        Matrix.from_columns(kernel, rows=space.ambient_dim),
    )


def subspace_intersection(s1: Subspace, s2: Subspace) -> Subspace:
    """Basis of s1 with coordinates constrained into s2.

    With E = basis(s1) and F a basis of s2's orthogonal complement (so
    s2 is exactly the null space of F^T), solve F^T E alpha = 0 and map
    the solutions back through E.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )
    e = s1.basis
    f = orthogonal_complement(s2).basis
    coords = (f.T @ e).null_space()
    vectors = [_apply(e, alpha) for alpha in coords]
    return Subspace(s1.ambient_dim, Matrix.from_columns(vectors, rows=s1.ambient_dim))


def complete_basis(fixed: Sequence[Sequence], candidates: Sequence[Sequence]) -> list[int]:
    """Indices of candidates that greedily extend `fixed` to a larger
    independent set, scanning left to right.

    The fixed vectors must already be independent.  The selection stops
    enlarging once the pooled span saturates; callers arrange candidate
    order so the outcome is deterministic.
    """
    if not fixed and not candidates:
        return []
    dim = len(fixed[0]) if fixed else len(candidates[0])
    span = IncrementalSpan(dim)
    for v in fixed:
        if not span.add(v):
            raise ValueError("fixed vectors are linearly dependent")
    return [idx for idx, v in enumerate(candidates) if span.add(v)]


def kalman_decompose(ss: StateSpace) -> KalmanDecomposition:
    """Split the state space into the four controllability/observability
    groups and return the change of basis realizing the split.

    T's columns are, in order: a basis G of (controllable intersect
    unobservable); vectors from the controllable-space basis completing
    G within it; vectors from the unobservable-space basis completing G
    within it; canonical vectors completing to all of R^n.  The second
    group carries the minimal realization.
    """
    n = ss.n
    e_c = controllable_space(ss)
    e_no = orthogonal_complement(observable_space(ss))
    g = subspace_intersection(e_c, e_no)

    g_cols = [g.basis.column(j) for j in range(g.dim)]
    c_cands = [e_c.basis.column(j) for j in range(e_c.dim)]
    no_cands = [e_no.basis.column(j) for j in range(e_no.dim)]
    canonical = [Matrix.identity(n).column(j) for j in range(n)]

    sel_c = [c_cands[i] for i in complete_basis(g_cols, c_cands)]
    sel_no = [no_cands[i] for i in complete_basis(g_cols, no_cands)]
    partial = g_cols + sel_c + sel_no
    sel_v = [canonical[i] for i in complete_basis(partial, canonical)]

    columns = partial + sel_v
    t = Matrix.from_columns(columns, rows=n)
    transformed = similarity_transform(ss, t)

    sizes = (len(g_cols), len(sel_c), len(sel_no), len(sel_v))
    bounds = []
    start = 0
    for size in sizes:
        bounds.append(tuple(range(start, start + size)))
        start += size
    return KalmanDecomposition(
        transform=t,
        system=transformed,
        groups=tuple(bounds),  # type: ignore[arg-type]
    )


def is_controllable(ss: StateSpace) -> bool:
    """rank [B, AB, ..., A^(n-1)B] = n; vacuously true for n = 0."""
    return rank_exact(controllability_matrix(ss)) == ss.n


def is_observable(ss: StateSpace) -> bool:
    """rank of the stacked C, CA, ..., CA^(n-1) equals n."""
    return rank_exact(observability_matrix(ss)) == ss.n


def minimal_realization(ss: StateSpace) -> StateSpace:
    """The controllable-and-observable block of the decomposition.

    The result has the same transfer matrix as the input, is both
    controllable and observable, and is a fixed point of this function.
    """
    kd = kalman_decompose(ss)
    keep = kd.groups[1]
    sys = kd.system
    return StateSpace(
        A=sys.A.submatrix(keep, keep),
        B=sys.B.submatrix(keep, range(sys.inputs)),
        C=sys.C.submatrix(range(sys.outputs), keep),
    )
