"""Precision budget for the certified numeric pipeline.

Given enclosures of the distinct nonzero roots and the proper leading
coefficients, extract

* ``M`` - largest pairwise root distance, floored at 1
* ``m`` - smallest pairwise root distance, capped at 1
* ``R`` - largest root modulus, floored at 1
* ``r`` - smallest root modulus, capped at 1
* ``c`` - largest coefficient modulus, floored at 1

and evaluate the root radius that guarantees every output disk traps exactly
one integer::

    eps* = m^2 r / (2^(2n+7) n^5) * (m / (M R c))^n

All quantities are rounded in the safe direction: ``M, R, c`` up, ``m, r`` and
``eps*`` down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import gmpy2
from gmpy2 import mpfr, mpq

from .ball import RADIUS_PREC, ComplexDisk, _ctx, round_rational, sci, to_mpq
from .errors import DiskContainsZero, RepeatedRoot

GUARD_BITS = 8
_LOG10_2 = math.log10(2)


def _dir(rnd):
    return _ctx(RADIUS_PREC, rnd)


def _as_disk(root):
    if isinstance(root, ComplexDisk):
        return root
    return ComplexDisk.exact(root, prec=256)


def _distance(a: ComplexDisk, b: ComplexDisk, rnd):
    dx = mpq(a.re) - mpq(b.re)
    dy = mpq(a.im) - mpq(b.im)
    ctx = _dir(rnd)
    return ctx.sqrt(round_rational(dx * dx + dy * dy, RADIUS_PREC, rnd))


def _bound(value, rnd):
    if isinstance(value, float):
        value = mpq(value)
    return round_rational(to_mpq(value), RADIUS_PREC, rnd)


@dataclass(frozen=True)
class RootBounds:
    M: mpfr
    m: mpfr
    R: mpfr
    r: mpfr
    c: mpfr
    n: int


@dataclass(frozen=True)
class PrecisionPlan:
    """Extracted bounds, the certified radius ``epsilon`` and the bit budget.

    ``bound_bits`` is ``ceil(log2(1/epsilon))``; ``required_bits`` adds a fixed
    guard margin and is the per-root precision recommendation.
    """

    M: mpfr
    m: mpfr
    R: mpfr
    r: mpfr
    c: mpfr
    n: int
    epsilon: mpfr
    bound_bits: int
    required_bits: int

    @property
    def decimal_digits(self) -> int:
        """``bound_bits`` expressed as decimal digits, rounded up."""
        return math.ceil(self.bound_bits * _LOG10_2)

    def unit_readings(self, figure: int) -> dict:
        """Whether ``figure`` bounds this plan read as bits and as decimal digits."""
        return {"bits": self.bound_bits <= figure, "digits": self.decimal_digits <= figure}

    def as_dict(self) -> dict:
        fmt = sci
        return {
            "M": fmt(self.M), "m": fmt(self.m), "R": fmt(self.R), "r": fmt(self.r),
            "c": fmt(self.c), "n": self.n, "epsilon": fmt(self.epsilon),
            "bound_bits": self.bound_bits, "required_bits": self.required_bits,
            "decimal_digits": self.decimal_digits,
        }


def extract_bounds(roots, coefficients) -> RootBounds:
    """Conservative ``(M, m, R, r, c)`` for disk or exact roots.

    ``M, R`` use the outer edge of each disk and ``m, r`` the inner edge, so a
    plan built from enclosures is valid for every root inside them.
    """
    disks = [_as_disk(x) for x in roots]
    if not disks:
        raise ValueError("at least one root is required")
    up, down = gmpy2.RoundUp, gmpy2.RoundDown
    one = mpfr(1)
    M, m = one, one
    for a, b in combinations(disks, 2):
        hi = _dir(up).add(_distance(a, b, up), _dir(up).add(a.rad, b.rad))
        lo = _dir(down).sub(_distance(a, b, down), _dir(up).add(a.rad, b.rad))
        if lo <= 0:
            raise RepeatedRoot(f"root enclosures {a!r} and {b!r} are not separated")
        M = max(M, hi)
        m = min(m, lo)
    R, r = one, one
    for a in disks:
        R = max(R, a.abs_value())
        lo = _dir(down).sub(a.center_abs(down), a.rad)
        if lo <= 0:
            raise DiskContainsZero(f"root enclosure {a!r} contains the origin")
        r = min(r, lo)
    c = one
    for x in coefficients:
        c = max(c, round_rational(abs(to_mpq(x)), RADIUS_PREC, up))
    return RootBounds(M, m, R, r, c, len(disks))


def epsilon_bound(M, m, R, r, c, n: int) -> mpfr:
    """``m^2 r / (2^(2n+7) n^5) * (m / (M R c))^n`` rounded down."""
    if n < 1:
        raise ValueError("n must be at least 1")
    up, down = _dir(gmpy2.RoundUp), _dir(gmpy2.RoundDown)
    M, R, c = (_bound(x, gmpy2.RoundUp) for x in (M, R, c))
    m, r = (_bound(x, gmpy2.RoundDown) for x in (m, r))
    if min(M, m, R, r, c) <= 0:
        raise ValueError("bounds must be positive")
    head = down.div(down.mul(down.mul(m, m), r), up.mul(up.mul_2exp(mpfr(1), 2 * n + 7), n ** 5))
    ratio = down.div(m, up.mul(up.mul(M, R), c))
    return down.mul(head, down.pow(ratio, n))


def bound_bits(epsilon) -> int:
    """``ceil(log2(1/epsilon))`` computed exactly from the binary exponent."""
    eps = round_rational(to_mpq(epsilon), RADIUS_PREC, gmpy2.RoundDown)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    # eps = f * 2^exp with 1/2 <= f < 1, so log2(1/eps) lies in (-exp, 1 - exp]
    exp, _ = gmpy2.frexp(eps)
    return 1 - exp


def required_bits(epsilon, guard: int = GUARD_BITS) -> int:
    """Per-root precision recommendation: ``ceil(log2(1/epsilon)) + guard``."""
    return bound_bits(epsilon) + guard


def plan_from_bounds(M, m, R, r, c, n: int, guard: int = GUARD_BITS) -> PrecisionPlan:
    eps = epsilon_bound(M, m, R, r, c, n)
    up, down = gmpy2.RoundUp, gmpy2.RoundDown
    bits = bound_bits(eps)
    return PrecisionPlan(_bound(M, up), _bound(m, down), _bound(R, up), _bound(r, down),
                         _bound(c, up), n, eps, bits, bits + guard)


def plan(roots, coefficients, guard: int = GUARD_BITS) -> PrecisionPlan:
    """Full plan for a root list and the coefficients the pipeline will use."""
    b = extract_bounds(roots, coefficients)
    return plan_from_bounds(b.M, b.m, b.R, b.r, b.c, b.n, guard)
