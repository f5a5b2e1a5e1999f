"""Forward reconstruction of leading coefficients from a multiplicity vector."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ball import ComplexDisk
from .exactq import MonicPoly, as_fraction, coeffs_from_power_sums, power_sums_of_poly_roots

FULL_EXPANSION_CAP = 4096


@dataclass(frozen=True)
class VerificationReport:
    coefficients_match: bool
    first_mismatch: Optional[int]
    degree_match: Optional[bool]
    reconstructed: tuple

    @property
    def ok(self) -> bool:
        return self.coefficients_match and self.degree_match is not False


def _degree_match(degrees, m, degree, m0, substitution):
    if degree is None or m0 is None:
        return None
    return substitution * sum(a * d for a, d in zip(m, degrees)) + m0 == degree


def verify_multiplicities(factors: Sequence[MonicPoly], m: Sequence[int], coefficients: Sequence,
                          degree: Optional[int] = None, m0: Optional[int] = None,
                          substitution: int = 1) -> VerificationReport:
    """Rebuild c_1..c_k from ``prod q_i^{m_i}`` through power sums and compare.

    ``first_mismatch`` is reported as a codegree of the original variable,
    i.e. scaled by ``substitution``.
    """
    if len(factors) != len(m):
        raise ValueError("one multiplicity per factor is required")
    target = [as_fraction(c) for c in coefficients]
    k = len(target)
    p = [Fraction(0)] * k
    for q, mi in zip(factors, m):
        for j, s in enumerate(power_sums_of_poly_roots(q, k)):
            p[j] += mi * s
    rebuilt = coeffs_from_power_sums(p)
    mismatch = next((j + 1 for j in range(k) if rebuilt[j] != target[j]), None)
    return VerificationReport(
        mismatch is None,
        None if mismatch is None else mismatch * substitution,
        _degree_match([q.degree for q in factors], m, degree, m0, substitution),
        tuple(rebuilt),
    )


def verify_disk_multiplicities(roots: Sequence[ComplexDisk], m: Sequence[int], coefficients: Sequence,
                               degree: Optional[int] = None, m0: Optional[int] = None,
                               substitution: int = 1) -> VerificationReport:
    """Disk analogue: every exact coefficient must lie in its reconstructed disk."""
    if len(roots) != len(m):
        raise ValueError("one multiplicity per root is required")
    target = [as_fraction(c) for c in coefficients]
    k = len(target)
    powers = list(roots)
    p = []
    for _ in range(k):
        acc = 0
        for x, mi in zip(powers, m):
            acc = x * mi + acc
        p.append(acc)
        powers = [x * r for x, r in zip(powers, roots)]
    c = []
    for j in range(1, k + 1):
        s = p[j - 1]
        for i in range(1, j):
            s = s + c[j - i - 1] * p[i - 1]
        c.append(s * Fraction(-1, j))
    inside = [ci.contains(t) if isinstance(ci, ComplexDisk) else ci == t for ci, t in zip(c, target)]
    mismatch = next((j + 1 for j, ok in enumerate(inside) if not ok), None)
    return VerificationReport(
        mismatch is None,
        None if mismatch is None else mismatch * substitution,
        _degree_match([1] * len(roots), m, degree, m0, substitution),
        tuple(c),
    )


def _mul_trunc(a, b, keep):
    out = [Fraction(0)] * min(len(a) + len(b) - 1, keep)
    for i, x in enumerate(a[:keep]):
        if not x:
            continue
        for j, y in enumerate(b[:keep - i]):
            out[i + j] += x * y
    return out


def expand_product(factors: Sequence[MonicPoly], m: Sequence[int],
                   max_codegree: Optional[int] = None) -> list:
    """Coefficients c_1.. of ``prod q_i^{m_i}`` by direct polynomial multiplication.

    An oracle independent of Newton's identities. Without ``max_codegree``
    the full product is formed, and only up to degree 4096.
    """
    degree = sum(q.degree * mi for q, mi in zip(factors, m))
    if max_codegree is None:
        if degree > FULL_EXPANSION_CAP:
            raise ValueError(f"full expansion capped at degree {FULL_EXPANSION_CAP}, got {degree}")
        keep = degree + 1
    else:
        keep = max_codegree + 1
    acc = [Fraction(1)]
    for q, mi in zip(factors, m):
        base, e = q.dense(), mi
        while e:
            if e & 1:
                acc = _mul_trunc(acc, base, keep)
            e >>= 1
            if e:
                base = _mul_trunc(base, base, keep)
    acc = acc + [Fraction(0)] * (keep - len(acc))
    return acc[1:keep]
