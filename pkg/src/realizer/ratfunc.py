"""Exact polynomials and rational functions in the Laplace variable s.

Coefficients are arbitrary-precision rationals (`fractions.Fraction`).
Floating point enters only at evaluation, never in arithmetic, so every
identity tested elsewhere in the package holds exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import JsonFormatError, PoleError

Scalar = Union[Fraction, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or exact numeric string to a Fraction.

    Strings may be integers ("-3"), ratios ("5/4"), or finite decimals
    ("0.25"); all convert exactly.  Floats are rejected on purpose: they
    would smuggle binary rounding into the exact core.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(
        f"cannot convert {type(value).__name__} to an exact rational; "
        "use int, Fraction, or a numeric string"
    )


def fraction_to_json(value: Fraction) -> int | str:
    """Render a Fraction as a JSON-safe value: int when integral, else "p/q"."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def fraction_from_json(value) -> Fraction:
    """Read a coefficient from JSON: int, "p/q", or a decimal string."""
    if isinstance(value, bool):
        raise JsonFormatError(f"coefficient must be an int or string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return as_fraction(value)
        except ValueError as exc:
            raise JsonFormatError(str(exc)) from exc
    if isinstance(value, float):
        raise JsonFormatError(
            f"coefficient {value!r} is a float; use an int or an exact string "
            'like "1/3" or "0.25"'
        )
    raise JsonFormatError(f"coefficient must be an int or string, got {value!r}")


class Polynomial:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending order of power.  The zero
    polynomial is canonically ``(0,)`` and has degree -1; all other
    representations strip trailing zero coefficients, so structural
    equality coincides with mathematical equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs) if cs else (_ZERO,)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls((0,))

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def s(cls) -> "Polynomial":
        """The variable itself."""
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls((as_fraction(value),))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        if self.is_zero:
            return -1
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._coeffs) == 1 and self._coeffs[0] == 0

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1]

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient is 1.  Zero maps to zero."""
        if self.is_zero or self.leading == 1:
            return self
        inv = 1 / self.leading
        return Polynomial(c * inv for c in self._coeffs)

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        a, b = self._coeffs, other._coeffs
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative int")
        result = Polynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        dd = other.degree
        if self.degree < dd:
            return Polynomial(), self
        rem = list(self._coeffs)
        quot = [_ZERO] * (self.degree - dd + 1)
        lead = other.leading
        for k in range(self.degree - dd, -1, -1):
            c = rem[k + dd] / lead
            if c != 0:
                quot[k] = c
                for i, oc in enumerate(other._coeffs):
                    rem[k + i] -= c * oc
        return Polynomial(quot), Polynomial(rem[:dd] if dd else (0,))

    def __floordiv__(self, other):
        result = divmod(self, other)
        if result is NotImplemented:
            return NotImplemented
        return result[0]

    def __mod__(self, other):
        result = divmod(self, other)
        if result is NotImplemented:
            return NotImplemented
        return result[1]

    def __call__(self, z):
        """Horner evaluation.  Exact for int/Fraction arguments, floating
        point (with coefficients converted at this boundary) otherwise."""
        if isinstance(z, (int, Fraction)) and not isinstance(z, bool):
            acc = _ZERO
            for c in reversed(self._coeffs):
                acc = acc * z + c
            return acc
        zz = complex(z) if isinstance(z, complex) else float(z)
        acc = 0.0 if isinstance(zz, float) else 0j
        for c in reversed(self._coeffs):
            acc = acc * zz + float(c)
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"Polynomial({list(self._coeffs)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(p: Polynomial) -> str:
    """Human-readable form, descending powers: ``s^2 - 3/2*s + 1``."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for power in range(p.degree, -1, -1):
        c = p.coeffs[power]
        if c == 0:
            continue
        if power == 0:
            body = str(abs(c))
        else:
            var = "s" if power == 1 else f"s^{power}"
            body = var if abs(c) == 1 else f"{abs(c)}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor by the Euclidean algorithm.

    Remainders are re-normalized to monic at every step, which keeps
    coefficient growth in check without changing the result.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


class RationalFunction:
    """Quotient of two polynomials, kept in canonical form.

    Canonical means the pair is reduced (gcd of numerator and denominator
    is 1) and the denominator is monic; zero is 0/1.  Equality is decided
    by cross-multiplication, which on canonical forms agrees with
    structural equality.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, Polynomial) else Polynomial((num,))
        den = den if isinstance(den, Polynomial) else Polynomial((den,))
        if den.is_zero:
            raise ZeroDivisionError("denominator is the zero polynomial")
        if num.is_zero:
            self._num = Polynomial()
            self._den = Polynomial.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading
        if lead != 1:
            inv = 1 / lead
            num = num * inv
            den = den * inv
        self._num = num
        self._den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(0)

    @classmethod
    def s(cls) -> "RationalFunction":
        return cls(Polynomial.s())

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    @property
    def is_proper(self) -> bool:
        """deg num <= deg den (zero counts as proper)."""
        return self._num.degree <= self._den.degree

    @property
    def is_strictly_proper(self) -> bool:
        """deg num < deg den (zero counts as strictly proper)."""
        return self._num.degree < self._den.degree

    def _coerce(self, other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)) and not isinstance(other, bool):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self._num * other._den + other._num * self._den,
            self._den * other._den,
        )

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RationalFunction)
        out._num = -self._num
        out._den = self._den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise ValueError("rational function exponent must be an int")
        if exponent < 0:
            if self.is_zero:
                raise ZeroDivisionError("zero cannot be raised to a negative power")
            return RationalFunction(self._den ** (-exponent), self._num ** (-exponent))
        return RationalFunction(self._num ** exponent, self._den ** exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # cross-multiplication: exact, no common-form assumption needed
        return self._num * other._den == other._num * self._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __call__(self, z):
        """Evaluate at a point.  Exact for int/Fraction arguments, floating
        point otherwise; a zero denominator raises PoleError either way."""
        den_val = self._den(z)
        if den_val == 0:
            raise PoleError(f"evaluation at a pole: s = {z}", z)
        return self._num(z) / den_val

    def to_json(self) -> dict:
        return {
            "num": [fraction_to_json(c) for c in self._num.coeffs],
            "den": [fraction_to_json(c) for c in self._den.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        if not isinstance(obj, dict):
            raise JsonFormatError(f"rational function must be an object, got {type(obj).__name__}")
        unknown = set(obj) - {"num", "den"}
        if unknown:
            raise JsonFormatError(f"unknown keys in rational function: {sorted(unknown)}")
        try:
            num_raw, den_raw = obj["num"], obj["den"]
        except KeyError as exc:
            raise JsonFormatError(f"rational function is missing key {exc.args[0]!r}") from exc
        if not isinstance(num_raw, list) or not isinstance(den_raw, list):
            raise JsonFormatError('"num" and "den" must be coefficient arrays')
        num = Polynomial(fraction_from_json(c) for c in num_raw) if num_raw else Polynomial()
        den = Polynomial(fraction_from_json(c) for c in den_raw) if den_raw else Polynomial()
        if den.is_zero:
            raise JsonFormatError("denominator coefficients describe the zero polynomial")
        return cls(num, den)

    def __repr__(self):
        return f"RationalFunction({self._num!r}, {self._den!r})"

    def __str__(self):
        return format_rational(self)


def format_rational(f: RationalFunction) -> str:
    """Canonical text form: ``num/(den)``, denominator omitted when 1.

    The output re-parses to an equal value: multi-term numerators are
    parenthesized, and so are denominators unless they are a bare power
    of s (where precedence already does the right thing).
    """
    num_str = format_polynomial(f.num)
    if f.den == Polynomial.one():
        return num_str
    if _term_count(f.num) > 1:
        num_str = f"({num_str})"
    den_str = format_polynomial(f.den)
    if not _is_power_of_s(f.den):
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"


def _term_count(p: Polynomial) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def _is_power_of_s(p: Polynomial) -> bool:
    return p.degree >= 1 and _term_count(p) == 1 and p.leading == 1
