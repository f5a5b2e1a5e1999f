"""Exact rational arithmetic: Newton/Faddeev-LeVerrier transforms and linear solving.

Rationals are :class:`fractions.Fraction`. Coefficient vectors are always in
codegree order: entry ``j - 1`` is ``c_j``, the coefficient of ``x^(n-j)`` in a
monic polynomial of degree ``n``; the leading ``c_0 = 1`` is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import MatrixSingular


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or an integer/rational/decimal string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class ComplexRational:
    """Gaussian rational ``real + imag*i`` with exact Fraction parts."""

    real: Fraction
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "real", as_fraction(self.real))
        object.__setattr__(self, "imag", as_fraction(self.imag))

    @classmethod
    def of(cls, value):
        if isinstance(value, ComplexRational):
            return value
        return cls(as_fraction(value))

    def conjugate(self):
        return ComplexRational(self.real, -self.imag)

    def abs2(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __bool__(self):
        return bool(self.real or self.imag)

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self.real == other.real and self.imag == other.imag
        try:
            return not self.imag and self.real == as_fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.real, self.imag))

    def __neg__(self):
        return ComplexRational(-self.real, -self.imag)

    def __add__(self, other):
        o = _cr(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = _cr(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _cr(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.real * o.real - self.imag * o.imag,
                               self.real * o.imag + self.imag * o.real)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _cr(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if not d:
            raise ZeroDivisionError("division by zero")
        n = self * o.conjugate()
        return ComplexRational(n.real / d, n.imag / d)

    def __rtruediv__(self, other):
        o = _cr(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return (1 / self) ** (-n)
        out, base = ComplexRational(Fraction(1)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"ComplexRational({self.real}, {self.imag})"


def _cr(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ComplexRational(Fraction(value))
    return None


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial stored by its proper coefficients in codegree order.

    ``coefficients[j]`` is ``c_{j+1}``. For a full polynomial ``degree`` equals
    the number of stored coefficients; a truncated one stores fewer.
    """

    coefficients: tuple
    degree: int

    def __post_init__(self):
        coeffs = tuple(as_fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if self.degree < len(coeffs):
            raise ValueError("more coefficients than the degree allows")
        if self.degree < 1:
            raise ValueError("degree must be positive")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "MonicPoly":
        """Full polynomial from its proper coefficients c_1..c_d."""
        return cls(tuple(coeffs), len(coeffs))

    @classmethod
    def from_dense(cls, coeffs: Sequence) -> "MonicPoly":
        """Full polynomial from highest-first coefficients including the leading 1."""
        coeffs = [as_fraction(c) for c in coeffs]
        if not coeffs or coeffs[0] != 1:
            raise ValueError("polynomial must be monic (leading coefficient 1)")
        return cls.from_coefficients(coeffs[1:])

    @property
    def is_full(self) -> bool:
        return self.degree == len(self.coefficients)

    @property
    def constant_term(self) -> Fraction:
        if not self.is_full:
            raise ValueError("constant term of a truncated polynomial is unknown")
        return self.coefficients[-1]

    def dense(self) -> list:
        """Highest-first coefficient list including the leading 1."""
        return [Fraction(1), *self.coefficients]

    def __call__(self, x):
        acc = 1
        for c in self.coefficients:
            acc = acc * x + c
        return acc


def power_sums_from_coeffs(c: Sequence) -> list:
    """Power sums p_1..p_k from proper leading coefficients c_1..c_k.

    Inverts ``c_j = -(1/j) sum_{i=1}^{j} c_{j-i} p_i`` (with ``c_0 = 1``) as
    ``p_j = -j c_j - sum_{i=1}^{j-1} c_{j-i} p_i``.
    """
    c = [as_fraction(x) for x in c]
    p: list = []
    for j in range(1, len(c) + 1):
        s = -j * c[j - 1]
        for i in range(1, j):
            s -= c[j - i - 1] * p[i - 1]
        p.append(s)
    return p


def coeffs_from_power_sums(p: Sequence) -> list:
    """Proper leading coefficients from power sums (forward Faddeev-LeVerrier)."""
    p = [as_fraction(x) for x in p]
    c: list = []
    for j in range(1, len(p) + 1):
        s = p[j - 1]
        for i in range(1, j):
            s += c[j - i - 1] * p[i - 1]
        c.append(-s / j)
    return c


def power_sums_of_poly_roots(q: MonicPoly, j_max: int) -> list:
    """Sums of the j-th powers of the roots of ``q`` (with multiplicity), j = 1..j_max.

    Newton's identities, continued past ``deg q`` by the linear recurrence
    ``p_j = -sum_{i=1}^{d} a_i p_{j-i}``.
    """
    if not q.is_full:
        raise ValueError("power sums need the full polynomial")
    a = list(q.coefficients)
    d = len(a)
    p: list = []
    for j in range(1, j_max + 1):
        s = -j * a[j - 1] if j <= d else Fraction(0)
        for i in range(1, min(j - 1, d) + 1):
            s -= a[i - 1] * p[j - i - 1]
        p.append(s)
    return p


def exact_solve(M: Sequence[Sequence], b: Sequence) -> list:
    """Solve ``M x = b`` exactly by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers, eliminated with exact integer division,
    then back-substituted in rationals. Raises :class:`MatrixSingular` when
    ``det M == 0``.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if len(b) != n:
        raise ValueError("right-hand side has the wrong length")
    if n == 0:
        return []

    rows = []
    for row, rhs in zip(M, b):
        entries = [as_fraction(x) for x in row] + [as_fraction(rhs)]
        scale = lcm(*(e.denominator for e in entries))
        rows.append([e.numerator * (scale // e.denominator) for e in entries])

    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k]), None)
        if pivot is None:
            raise MatrixSingular(f"matrix is singular (no pivot in column {k})")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        pk = rows[k]
        akk = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (akk * ri[j] - aik * pk[j]) // prev
            ri[k] = 0
        prev = akk

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        ri = rows[i]
        s = Fraction(ri[n])
        for j in range(i + 1, n):
            s -= ri[j] * x[j]
        x[i] = s / ri[i]
    return x


def mat_vec(M: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]
