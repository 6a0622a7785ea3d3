"""State-space models x' = Ax + Bu, y = Cx, and what can be computed
from them exactly or by fixed-step integration.

The triple (A, B, C) has no feed-through term: this package only deals
in strictly proper transfer behavior, so D is identically zero and is
not stored.  Recovering the transfer matrix uses the Leverrier-Faddeev
recurrence, which needs only exact matrix products and traces; no
eigenvalues are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, JsonFormatError
from .matrices import Matrix
from .ratfunc import Polynomial, RationalFunction
from .tfparse import TransferMatrix


@dataclass(frozen=True)
class StateSpace:
    """An exact state-space model.

    A is n x n, B is n x r (inputs), C is m x n (outputs).  n = 0 is
    legal and represents the zero system with the given input and
    output counts.
    """

    A: Matrix
    B: Matrix
    C: Matrix

    def __post_init__(self):
        if not self.A.is_square:
            raise DimensionError(f"A must be square, got {self.A.shape}")
        n = self.A.rows
        if self.B.rows != n:
            raise DimensionError(f"B has {self.B.rows} rows, expected {n}")
        if self.C.cols != n:
            raise DimensionError(f"C has {self.C.cols} columns, expected {n}")

    @property
    def n(self) -> int:
        """State dimension."""
        return self.A.rows

    @property
    def inputs(self) -> int:
        return self.B.cols

    @property
    def outputs(self) -> int:
        return self.C.rows

    def to_json(self) -> dict:
        out = {"A": self.A.to_json(), "B": self.B.to_json(), "C": self.C.to_json()}
        if self.n == 0:
            # an empty B serializes as [] and would lose the input count
            out["inputs"] = self.inputs
        return out

    @classmethod
    def from_json(cls, obj) -> "StateSpace":
        if not isinstance(obj, dict):
            raise JsonFormatError(f"state space must be an object, got {type(obj).__name__}")
        unknown = set(obj) - {"A", "B", "C", "inputs"}
        if unknown:
            raise JsonFormatError(f"unknown keys in state space: {sorted(unknown)}")
        missing = {"A", "B", "C"} - set(obj)
        if missing:
            raise JsonFormatError(f"state space is missing keys: {sorted(missing)}")
        a = Matrix.from_json(obj["A"])
        if not a.is_square:
            raise DimensionError(f"A must be square, got {a.shape}")
        n = a.rows
        hint = obj.get("inputs", 0)
        if not isinstance(hint, int) or isinstance(hint, bool) or hint < 0:
            raise JsonFormatError('"inputs" must be a nonnegative integer')
        b_raw, c_raw = obj["B"], obj["C"]
        b = Matrix.from_json(b_raw, cols=hint if b_raw == [] else None)
        c = Matrix.from_json(c_raw, cols=n if c_raw == [] else None)
        return cls(a, b, c)

    def __str__(self):
        return f"A =\n{_indent(self.A)}\nB =\n{_indent(self.B)}\nC =\n{_indent(self.C)}"


def _indent(m: Matrix) -> str:
    return "\n".join("  " + line for line in str(m).splitlines())


def leverrier(a: Matrix) -> tuple[list[Fraction], list[Matrix]]:
    """Characteristic coefficients and adjugate terms of (sI - A).

    Returns (coeffs, mats) where coeffs = [1, c1, ..., cn] gives the
    characteristic polynomial s^n + c1 s^(n-1) + ... + cn, and mats =
    [N1, ..., Nn] gives adj(sI - A) = N1 s^(n-1) + ... + Nn.  The
    recurrence is N1 = I, ck = -tr(A Nk)/k, N(k+1) = A Nk + ck I.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs: list[Fraction] = [Fraction(1)]
    mats: list[Matrix] = []
    current = Matrix.identity(n)
    for k in range(1, n + 1):
        mats.append(current)
        product = a @ current
        ck = -product.trace() / k
        coeffs.append(ck)
        current = product + ck * Matrix.identity(n)
    return coeffs, mats


def char_poly(a: Matrix | StateSpace) -> Polynomial:
    """Characteristic polynomial of A (or of a model's state matrix)."""
    if isinstance(a, StateSpace):
        a = a.A
    coeffs, _ = leverrier(a)
    return Polynomial(list(reversed(coeffs)))


def transfer_matrix(ss: StateSpace) -> TransferMatrix:
    """Recover G(s) = C (sI - A)^-1 B, entrywise reduced.

    Every entry of C adj(sI - A) B has degree at most n-1 against the
    common denominator det(sI - A), so the result is always strictly
    proper.  A 0-state model maps to the zero matrix.
    """
    m, r = ss.outputs, ss.inputs
    if m == 0 or r == 0:
        raise DimensionError("transfer matrix needs at least one input and one output")
    n = ss.n
    if n == 0:
        return TransferMatrix.zeros(m, r)
    coeffs, mats = leverrier(ss.A)
    den = Polynomial(list(reversed(coeffs)))
    products = [ss.C @ nk @ ss.B for nk in mats]  # coefficient of s^(n-k)
    entries = []
    for i in range(m):
        row = []
        for j in range(r):
            num = Polynomial([products[n - 1 - p][i, j] for p in range(n)])
            row.append(RationalFunction(num, den))
        entries.append(row)
    return TransferMatrix(entries)


def similarity_transform(ss: StateSpace, t: Matrix) -> StateSpace:
    """Change of state coordinates x = T z.

    Returns (T^-1 A T, T^-1 B, C T); raises SingularMatrixError when T
    is not invertible.
    """
    if t.shape != (ss.n, ss.n):
        raise DimensionError(f"T must be {ss.n} x {ss.n}, got {t.shape}")
    t_inv = t.inverse()
    return StateSpace(t_inv @ ss.A @ t, t_inv @ ss.B, ss.C @ t)


@dataclass(frozen=True)
class ImpulseRecord:
    """Sampled impulse response of one input channel.

    times[k] = k*dt; outputs[i][k] is output i at times[k].  The channel
    index is 0-based.
    """

    channel: int
    times: tuple[float, ...]
    outputs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if any(len(series) != len(self.times) for series in self.outputs):
            raise DimensionError("output series and time grid have different lengths")
        if not self.times or self.times[0] != 0.0:
            raise ValueError("time grid must start at 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("time grid must be strictly increasing")

    def to_csv(self) -> str:
        """Delimited form: header ``t,y1,...,ym``, 17 significant digits."""
        header = "t," + ",".join(f"y{i + 1}" for i in range(len(self.outputs)))
        lines = [header]
        for k, t in enumerate(self.times):
            row = [f"{t:.17g}"] + [f"{series[k]:.17g}" for series in self.outputs]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def impulse_response(ss: StateSpace, channel: int, t_end: float, dt: float) -> ImpulseRecord:
    """Impulse response of one input channel by classical Runge-Kutta.

    An impulse on channel j is equivalent to the initial state x(0) =
    B e_j with zero input afterwards, so the integration is of x' = Ax
    only.  The grid is t_k = k*dt up to the largest multiple of dt not
    beyond t_end.  channel is 0-based; 0 <= channel < inputs.
    """
    if not (0 <= channel < ss.inputs):
        raise DimensionError(
            f"channel {channel} out of range for {ss.inputs} input(s)"
        )
    t_end = float(t_end)
    dt = float(dt)
    if not (0 < dt < t_end):
        raise ValueError("need 0 < dt < t_end")
    a = ss.A.to_float()
    c = ss.C.to_float()
    x = [float(ss.B[i, channel]) for i in range(ss.n)]
    steps = int(t_end / dt + 1e-9)
    times = [k * dt for k in range(steps + 1)]
    outputs: list[list[float]] = [[] for _ in range(ss.outputs)]
    for k in range(steps + 1):
        for i, row in enumerate(c):
            outputs[i].append(_dot(row, x))
        if k < steps:
            x = _rk4_step(a, x, dt)
    return ImpulseRecord(
        channel=channel,
        times=tuple(times),
        outputs=tuple(tuple(series) for series in outputs),
    )


def _dot(row: list[float], x: list[float]) -> float:
    return sum(ri * xi for ri, xi in zip(row, x))


def _mat_vec(a: list[list[float]], x: list[float]) -> list[float]:
    return [_dot(row, x) for row in a]


def _rk4_step(a: list[list[float]], x: list[float], dt: float) -> list[float]:
    k1 = _mat_vec(a, x)
    k2 = _mat_vec(a, [xi + dt / 2 * ki for xi, ki in zip(x, k1)])
    k3 = _mat_vec(a, [xi + dt / 2 * ki for xi, ki in zip(x, k2)])
    k4 = _mat_vec(a, [xi + dt * ki for xi, ki in zip(x, k3)])
    return [
        xi + dt / 6 * (k1i + 2 * k2i + 2 * k3i + k4i)
        for xi, k1i, k2i, k3i, k4i in zip(x, k1, k2, k3, k4)
    ]
