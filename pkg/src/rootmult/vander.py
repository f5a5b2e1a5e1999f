"""Structured inverses of the Vandermonde matrix ``V`` and of ``V0 = V diag(r)``.

``V`` has entry ``r_i^j`` in row ``j`` (``j = 0..n-1``) and column ``i``, and
``V0`` has ``r_i^(j+1)``. The inverse is assembled as ``V^-1 = Delta W L``:

* ``Delta`` diagonal, ``Delta_ii = prod_{k != i} 1 / (r_i - r_k)``
* ``W`` upper triangular, ``W_ij = prod_{k > j, k != i} (r_i - r_k)`` for ``j >= i``
* ``L`` unit lower triangular, ``L_ij = L_{i-1,j-1} - r_{i-1} L_{i-1,j}``

Row ``i`` of ``W L`` holds the coefficients of ``prod_{k != i} (x - r_k)`` in
the Newton basis, so row ``i`` of the product is the Lagrange basis polynomial
``l_i`` in the monomial basis. The code is generic: scalars may be exact
(``Fraction``/``ComplexRational``) or :class:`~rootmult.ball.ComplexDisk`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import gmpy2
from gmpy2 import mpfr

from . import planner
from .ball import DEFAULT_PREC, RADIUS_PREC, ComplexDisk, _ctx, inv
from .errors import DiskContainsZero, PrecisionTooCoarse, RepeatedRoot, ZeroRoot
from .exactq import ComplexRational, as_fraction


@dataclass(frozen=True)
class StructuredInverse:
    delta: list
    w: list
    l: list
    product: list


def _normalize(roots, domain, prec):
    roots = list(roots)
    if domain is None:
        domain = "disk" if roots and all(isinstance(x, ComplexDisk) for x in roots) else "exact"
    if domain == "disk":
        return [x if isinstance(x, ComplexDisk) else ComplexDisk.exact(x, prec) for x in roots], domain
    if domain != "exact":
        raise ValueError(f"unknown domain {domain!r}")
    out = []
    for x in roots:
        if isinstance(x, ComplexDisk):
            raise TypeError("disk roots cannot be used on the exact path")
        if isinstance(x, ComplexRational):
            out.append(x.real if not x.imag else x)
        else:
            out.append(as_fraction(x))
    return out, domain


def _check_distinct(roots, domain):
    for (i, a), (j, b) in combinations(enumerate(roots), 2):
        clash = a.intersects(b) if domain == "disk" else a == b
        if clash:
            raise RepeatedRoot(f"roots {i} and {j} are not distinct")


def _reciprocal(x, domain):
    if domain == "disk":
        return inv(x)
    return 1 / x


def vandermonde_inverse(roots, domain=None, prec=DEFAULT_PREC) -> StructuredInverse:
    """Delta W L factorization of ``V^-1`` and its assembled product."""
    r, domain = _normalize(roots, domain, prec)
    _check_distinct(r, domain)
    n = len(r)
    if n == 0:
        return StructuredInverse([], [], [], [])

    delta = []
    for i in range(n):
        d = 1
        for k in range(n):
            if k != i:
                # invert each difference separately: a product of several
                # wide difference disks may swallow the origin
                d = d * _reciprocal(r[i] - r[k], domain)
        delta.append(d)

    w = [[0] * n for _ in range(n)]
    for i in range(n):
        acc = 1
        for j in range(n - 1, i - 1, -1):
            w[i][j] = acc
            if j != i:
                acc = acc * (r[i] - r[j])

    l = [[0] * n for _ in range(n)]
    l[0][0] = 1
    for i in range(1, n):
        for j in range(i + 1):
            up_left = l[i - 1][j - 1] if j >= 1 else 0
            up = l[i - 1][j] if j <= i - 1 else 0
            if j == i:
                l[i][j] = 1
            else:
                l[i][j] = up_left - r[i - 1] * up if up else up_left

    product = []
    for i in range(n):
        row = []
        for j in range(n):
            s = None
            for k in range(max(i, j), n):
                term = w[i][k] * l[k][j]
                s = term if s is None else s + term
            row.append(delta[i] * s)
        product.append(row)
    return StructuredInverse(delta, w, l, product)


def v0_inverse(roots, domain=None, prec=DEFAULT_PREC) -> StructuredInverse:
    """``V0^-1 = diag(r)^-1 V^-1``; the diagonal factor is folded into ``delta``."""
    r, domain = _normalize(roots, domain, prec)
    for i, x in enumerate(r):
        if domain == "disk":
            if x.contains_zero():
                raise DiskContainsZero(f"root disk {i} contains the origin")
        elif not x:
            raise ZeroRoot(f"root {i} is zero")
    base = vandermonde_inverse(r, domain, prec)
    scales = [_reciprocal(x, domain) for x in r]
    delta = [s * d for s, d in zip(scales, base.delta)]
    product = [[s * e for e in row] for s, row in zip(scales, base.product)]
    return StructuredInverse(delta, base.w, base.l, product)


def vandermonde(roots) -> list:
    n = len(roots)
    return [[x ** j if j else Fraction(1) for x in roots] for j in range(n)]


def v0_matrix(roots) -> list:
    n = len(roots)
    return [[x ** (j + 1) for x in roots] for j in range(n)]


@dataclass(frozen=True)
class Theorem3Diagnostics:
    """Observed spread of ``V0^-1`` next to the predicted worst case."""

    observed_d: mpfr
    observed_abs: mpfr
    bound_d: mpfr
    bound_abs: mpfr
    epsilon: mpfr

    @property
    def holds(self) -> bool:
        return self.observed_d <= self.bound_d and self.observed_abs <= self.bound_abs


def theorem3_diagnostics(roots) -> Theorem3Diagnostics:
    """Compare d(V0^-1) and |V0^-1| against the a priori bounds

        d(V0^-1) <= 2^(2n+6) n / (m^2 r) (MR/m)^n eps,   |V0^-1| <= (2n/r) (RM/m)^n

    where the disks share radius ``eps`` (the largest radius is used) and
    ``M, m, R, r`` are measured on the centers.
    """
    disks = [x if isinstance(x, ComplexDisk) else ComplexDisk.exact(x) for x in roots]
    n = len(disks)
    eps = max(d.rad for d in disks)
    centers = [ComplexDisk(d.re, d.im, mpfr(0), d.prec) for d in disks]
    b = planner.extract_bounds(centers, [])
    up = _ctx(RADIUS_PREC, gmpy2.RoundUp)
    if up.mul_2exp(eps, 2) >= b.m:
        raise PrecisionTooCoarse(f"radius {eps} is not below m/4 = {b.m / 4}")

    res = v0_inverse(disks, "disk")
    observed_d = max(e.diameter() for row in res.product for e in row)
    observed_abs = max(e.abs_value() for row in res.product for e in row)

    growth = up.pow(up.div(up.mul(b.M, b.R), b.m), n)
    bound_d = up.mul(up.div(up.mul(up.mul_2exp(mpfr(1), 2 * n + 6), n),
                            up.mul(up.mul(b.m, b.m), b.r)), up.mul(growth, eps))
    bound_abs = up.mul(up.div(2 * n, b.r), growth)
    return Theorem3Diagnostics(observed_d, observed_abs, bound_d, bound_abs, eps)
