"""Certified disks around the roots of an exact squarefree polynomial.

Used to plan and plot factor-mode problems, where only the minimal
polynomials are known. Approximations come from :func:`mpmath.polyroots`;
each is then certified with the Smith/Braess-Hadeler inclusion: for monic
``q`` of degree ``d`` and distinct approximations ``z_k`` the disks

    D(z_k, d * |q(z_k)| / |prod_{j != k} (z_k - z_j)|)

cover all roots, and each one disjoint from the rest holds exactly one root.
"""

from __future__ import annotations

import mpmath

import gmpy2
from gmpy2 import mpfr, mpq

from .ball import RADIUS_PREC, ComplexDisk, _ctx, _rounded
from .errors import RepeatedRoot
from .exactq import MonicPoly


def _approximations(q: MonicPoly, prec: int):
    with mpmath.workprec(prec + 32):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in q.dense()]
        if q.degree == 1:
            return [-coeffs[1]]
        return mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * prec + 64)


def _point(z, prec):
    re, _ = _rounded(_mpf_to_mpq(z.real), prec)
    im, _ = _rounded(_mpf_to_mpq(z.imag), prec)
    return ComplexDisk(re, im, mpfr(0), prec)


def _mpf_to_mpq(x):
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    return mpq(man << exp) if exp >= 0 else mpq(man, 1 << -exp)


def _certify(q: MonicPoly, centers):
    d = q.degree
    out = []
    for k, z in enumerate(centers):
        value = ComplexDisk(z.re, z.im, mpfr(0), z.prec)
        acc = ComplexDisk.exact(1, z.prec)
        for c in q.coefficients:
            acc = acc * value + c
        spread = ComplexDisk.exact(1, z.prec)
        for j, w in enumerate(centers):
            if j != k:
                spread = spread * (value - w)
        low = spread.abs_lower()
        if not low:
            return None
        up = _ctx(RADIUS_PREC, gmpy2.RoundUp)
        radius = up.div(up.mul(d, acc.abs_value()), low)
        out.append(ComplexDisk(z.re, z.im, radius, z.prec))
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if out[i].intersects(out[j]):
                return None
    return out


def enclose_roots(q: MonicPoly, prec: int = 128, max_prec: int = 1 << 14) -> list:
    """Pairwise-disjoint disks, one around each root of the squarefree ``q``."""
    if not q.is_full:
        raise ValueError("need the full polynomial")
    work = prec
    while work <= max_prec:
        centers = [_point(z, work) for z in _approximations(q, work)]
        disks = _certify(q, centers)
        if disks is not None:
            return disks
        work *= 2
    raise RepeatedRoot("could not separate the roots; is the polynomial squarefree?")
