"""Closed complex disk arithmetic over arbitrary-precision binary floats.

A :class:`ComplexDisk` ``D(a, r)`` is the closed set ``{z : |z - a| <= r}``.
Centers are rectangular ``(re, im)`` pairs of :class:`gmpy2.mpfr` values held at
the disk's working precision ``prec``; radii are 64-bit ``mpfr`` values that are
only ever rounded upward.

Every operation returns a disk containing the exact image of its operands:

* ``A + B = D(a + b, r1 + r2)``
* ``A * B = D(ab, |a| r2 + |b| r1 + r1 r2)``
* ``1 / B = D(conj(b) / (|b|^2 - r2^2), r2 / (|b|^2 - r2^2))``
* ``A ** n = D(a^n, (|a| + r1)^n - |a|^n)``

Centers are rounded to nearest. Whenever that rounding is inexact the radius
absorbs one ulp per rounded component, so the enclosure property survives.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import DiskContainsZero

RADIUS_PREC = 64
DEFAULT_PREC = 128

_local = threading.local()


def _ctx(prec, rnd=gmpy2.RoundToNearest):
    # contexts carry sticky flags, so each thread gets its own
    cache = getattr(_local, "cache", None)
    if cache is None:
        cache = _local.cache = {}
    key = (prec, rnd)
    ctx = cache.get(key)
    if ctx is None:
        ctx = cache[key] = gmpy2.context(precision=prec, round=rnd)
    return ctx


def _up(prec=RADIUS_PREC):
    return _ctx(prec, gmpy2.RoundUp)


def _down(prec=RADIUS_PREC):
    return _ctx(prec, gmpy2.RoundDown)


ZERO = mpfr(0)


def ulp(x, prec):
    """Unit in the last place of ``x`` at ``prec`` bits (0 for x == 0)."""
    if not x:
        return ZERO
    exp, _ = gmpy2.frexp(x)
    return gmpy2.mul_2exp(mpfr(1, RADIUS_PREC), exp - prec)


def sci(x, digits=7) -> str:
    """Scientific notation for an mpfr of any exponent (floats would underflow)."""
    if not isinstance(x, mpfr):
        x = round_rational(to_mpq(x), max(RADIUS_PREC, 4 * digits))
    if not x:
        return "0"
    mant, exp, _ = x.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+d}"


def to_mpq(x):
    """Exact rational value of an int, Fraction, float, mpz, mpq or mpfr."""
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def round_rational(q, prec, rnd=gmpy2.RoundToNearest):
    """Round an exact rational to ``prec`` bits in the given rounding mode."""
    with _ctx(prec, rnd):
        return mpfr(to_mpq(q))


def _rounded(q, prec):
    """Nearest ``mpfr`` to ``q`` together with an upper bound on the error."""
    q = to_mpq(q)
    x = round_rational(q, prec)
    err = abs(mpq(x) - q)
    if not err:
        return x, ZERO
    return x, round_rational(err, RADIUS_PREC, gmpy2.RoundUp)


def _split(value):
    """Real and imaginary parts of a scalar as exact rationals."""
    if isinstance(value, (int, Rational)):
        return to_mpq(value), mpq(0)
    if isinstance(value, float):
        return mpq(value), mpq(0)
    if isinstance(value, (complex, ComplexDisk)) or hasattr(value, "imag"):
        return to_mpq(value.real), to_mpq(value.imag)
    if type(value).__name__ == "mpfr":
        return mpq(value), mpq(0)
    raise TypeError(f"cannot convert {type(value).__name__} to a disk")


@dataclass(frozen=True, eq=False)
class ComplexDisk:
    """Closed disk ``D(re + i*im, rad)`` with centers held at ``prec`` bits."""

    re: mpfr
    im: mpfr
    rad: mpfr
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        for part in (self.re, self.im, self.rad):
            if not gmpy2.is_finite(part):
                raise ValueError("disk center and radius must be finite")
        if self.rad < 0:
            raise ValueError("disk radius must be nonnegative")
        if self.prec < 2:
            raise ValueError("precision must be at least 2 bits")

    # -- construction ---------------------------------------------------

    @classmethod
    def exact(cls, value, prec=DEFAULT_PREC, radius=0):
        """Smallest convenient disk around an exact scalar, widened by ``radius``."""
        if isinstance(value, ComplexDisk):
            return value.widen(radius)
        qre, qim = _split(value)
        re, e1 = _rounded(qre, prec)
        im, e2 = _rounded(qim, prec)
        rad = _up().add(_up().add(e1, e2), _radius(radius))
        return cls(re, im, rad, prec)

    @classmethod
    def from_strings(cls, re, im="0", radius="0", prec=DEFAULT_PREC):
        """Disk from decimal or rational strings, parsed exactly."""
        value = (Fraction(re), Fraction(im))
        return cls.exact(_Pair(*value), prec, Fraction(radius))

    def widen(self, radius):
        if not radius:
            return self
        return ComplexDisk(self.re, self.im, _up().add(self.rad, _radius(radius)), self.prec)

    def with_prec(self, prec):
        """Same set, centers re-rounded to ``prec`` bits (radius grows if needed)."""
        if prec == self.prec:
            return self
        re, e1 = _rounded(mpq(self.re), prec)
        im, e2 = _rounded(mpq(self.im), prec)
        rad = _up().add(self.rad, _up().add(e1, e2))
        return ComplexDisk(re, im, rad, prec)

    # -- introspection --------------------------------------------------

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    @property
    def center(self):
        return complex(self.re, self.im)

    def center_abs(self, rnd=gmpy2.RoundUp):
        """|center| rounded in the requested direction."""
        return _modulus(self.re, self.im, rnd)

    def diameter(self):
        return _up().mul(self.rad, 2)

    def abs_value(self):
        """|A| = |a| + r, an upper bound on the modulus of every member."""
        return _up().add(self.center_abs(), self.rad)

    def abs_lower(self):
        """max(|a| - r, 0), a lower bound on the modulus of every member."""
        low = _down().sub(self.center_abs(gmpy2.RoundDown), self.rad)
        return low if low > 0 else ZERO

    def contains(self, value):
        """Exact test: does the closed disk contain the given scalar?"""
        qre, qim = _split(value)
        dx = qre - mpq(self.re)
        dy = qim - mpq(self.im)
        r = mpq(self.rad)
        return dx * dx + dy * dy <= r * r

    def contains_zero(self):
        return self.contains(0)

    def intersects(self, other):
        """Exact test for a common point of two closed disks."""
        dx = mpq(self.re) - mpq(other.re)
        dy = mpq(self.im) - mpq(other.im)
        r = mpq(self.rad) + mpq(other.rad)
        return dx * dx + dy * dy <= r * r

    def __repr__(self):
        return f"D({sci(self.re)} + {sci(self.im)}i, {sci(self.rad, 3)})"

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        # operators on mpfr round to the global 53-bit context; negate at full width
        ctx = _ctx(max(self.prec, self.re.precision, self.im.precision))
        return ComplexDisk(ctx.minus(self.re), ctx.minus(self.im), self.rad, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        return add(self, _coerce(other, self.prec))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self.prec))

    def __rsub__(self, other):
        return sub(_coerce(other, self.prec), self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return scale(self, other)
        return mul(self, _coerce(other, self.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return mul(self, inv(_coerce(other, self.prec)))

    def __rtruediv__(self, other):
        return mul(_coerce(other, self.prec), inv(self))

    def __pow__(self, n):
        return pow(self, n)


class _Pair:
    """Bare (real, imag) holder used when parsing exact strings."""

    __slots__ = ("real", "imag")

    def __init__(self, real, imag):
        self.real = real
        self.imag = imag


def _radius(value):
    if isinstance(value, mpfr) or type(value).__name__ == "mpfr":
        return _up().add(value, 0)
    if isinstance(value, float):
        value = mpq(value)
    value = to_mpq(value)
    if value < 0:
        raise ValueError("disk radius must be nonnegative")
    return round_rational(value, RADIUS_PREC, gmpy2.RoundUp)


def _coerce(value, prec):
    if isinstance(value, ComplexDisk):
        return value
    return ComplexDisk.exact(value, prec)


def _modulus(re, im, rnd=gmpy2.RoundUp):
    ctx = _ctx(RADIUS_PREC, rnd)
    if not im:
        return ctx.abs(re)
    if not re:
        return ctx.abs(im)
    return ctx.sqrt(ctx.fmma(re, re, im, im))


def _center_slack(ctx, prec, *parts):
    """One ulp per inexact center component, else zero."""
    if not ctx.inexact:
        return ZERO
    up = _up()
    slack = ZERO
    for part in parts:
        slack = up.add(slack, ulp(part, prec))
    return slack


def add(a, b):
    """Disk sum ``D(a + b, r1 + r2)``."""
    prec = max(a.prec, b.prec)
    ctx = _ctx(prec)
    ctx.clear_flags()
    re = ctx.add(a.re, b.re)
    im = ctx.add(a.im, b.im)
    up = _up()
    rad = up.add(up.add(a.rad, b.rad), _center_slack(ctx, prec, re, im))
    return ComplexDisk(re, im, rad, prec)


def sub(a, b):
    """Disk difference ``D(a - b, r1 + r2)``."""
    return add(a, -b)


def neg(a):
    return -a


def scale(a, q):
    """Multiply a disk by an exact rational; radius scales by |q|."""
    q = to_mpq(q)
    if q.denominator == 1:
        u = mpfr(q.numerator, max(a.prec, q.numerator.bit_length() + 1))
        return mul(a, ComplexDisk(u, ZERO, ZERO, a.prec))
    return mul(a, ComplexDisk.exact(q, a.prec))


def mul(a, b):
    """Disk product ``D(ab, |a| r2 + |b| r1 + r1 r2)``."""
    prec = max(a.prec, b.prec)
    ctx = _ctx(prec)
    ctx.clear_flags()
    if not a.im and not b.im:
        re = ctx.mul(a.re, b.re)
        im = ZERO
    else:
        re = ctx.fmms(a.re, b.re, a.im, b.im)
        im = ctx.fmma(a.re, b.im, a.im, b.re)
    up = _up()
    rad = _center_slack(ctx, prec, re, im)
    if a.rad or b.rad:
        spread = up.add(up.mul(a.center_abs(), b.rad), up.mul(b.center_abs(), a.rad))
        rad = up.add(rad, up.add(spread, up.mul(a.rad, b.rad)))
    return ComplexDisk(re, im, rad, prec)


def inv(b):
    """Disk reciprocal; raises :class:`DiskContainsZero` unless |b| > r."""
    qre, qim, r = mpq(b.re), mpq(b.im), mpq(b.rad)
    den = qre * qre + qim * qim - r * r
    if den <= 0:
        raise DiskContainsZero(f"cannot invert {b!r}: disk contains the origin")
    re, e1 = _rounded(qre / den, b.prec)
    im, e2 = _rounded(-qim / den, b.prec)
    up = _up()
    rad = up.add(e1, e2)
    if r:
        rad = up.add(rad, round_rational(r / den, RADIUS_PREC, gmpy2.RoundUp))
    return ComplexDisk(re, im, rad, b.prec)


def div(a, b):
    return mul(a, inv(b))


def pow(a, n):
    """Closed-form power ``D(a^n, (|a| + r)^n - |a|^n)``.

    The radius is accumulated as the binomial sum of its positive terms, so
    no cancellation occurs for tiny ``r``.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if n == 0:
        return ComplexDisk(mpfr(1), ZERO, ZERO, a.prec)
    point = ComplexDisk(a.re, a.im, ZERO, a.prec)
    center = point
    base = point
    k = n - 1
    # exponentiation by squaring on the exact center; rounding slack
    # accumulates in the radius of `center`
    while k:
        if k & 1:
            center = mul(center, base)
        k >>= 1
        if k:
            base = mul(base, base)
    if not a.rad:
        return center
    up = _up()
    mod = a.center_abs()
    rad = ZERO
    binom = 1
    for j in range(1, n + 1):
        binom = binom * (n - j + 1) // j
        term = up.mul(up.mul(binom, up.pow(a.rad, j)), up.pow(mod, n - j))
        rad = up.add(rad, term)
    return ComplexDisk(center.re, center.im, up.add(center.rad, rad), a.prec)


def pow_repeated(a, n):
    """Power by ``n - 1`` successive disk products (an independent enclosure)."""
    if n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if n == 0:
        return ComplexDisk(mpfr(1), ZERO, ZERO, a.prec)
    out = a
    for _ in range(n - 1):
        out = mul(out, a)
    return out


def diameter(a):
    """d(A) = 2r, rounded up."""
    return _up().mul(a.rad, 2)


def abs_value(a):
    """|A| = |a| + r, rounded up."""
    return a.abs_value()
