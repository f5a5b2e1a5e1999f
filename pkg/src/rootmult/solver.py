"""End-to-end multiplicity recovery.

Two pipelines share one shape: turn the proper leading coefficients into power
sums exactly, then solve a structured linear system for the multiplicities.

* :func:`solve_numeric` - distinct nonzero roots known as disks. The power sums
  are exact; ``V0^-1 p`` is evaluated in disk arithmetic and each entry must
  isolate exactly one integer.
* :func:`solve_exact` - irreducible factors known exactly. The matrix of root
  power sums of each factor is rational, so the whole solve is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from . import planner
from .ball import ComplexDisk
from .errors import (AmbiguousDisk, InconsistentInput, NegativeMultiplicity,
                     NonIntegralSolution, NonZeroSkippedCoefficient, ZeroRoot)
from .exactq import (MonicPoly, as_fraction, exact_solve, power_sums_from_coeffs,
                     power_sums_of_poly_roots)
from .vander import v0_inverse

# extra center bits on top of the planner's root-precision budget
WORKING_MARGIN = 32


@dataclass(frozen=True)
class PolyProblem:
    """Leading coefficients plus root data.

    ``coefficients`` are the proper leading coefficients c_1..c_k of the
    (possibly substituted) polynomial. ``roots`` is either a sequence of
    :class:`ComplexDisk` or a sequence of :class:`MonicPoly` factors.
    ``substitution`` records ``y = x^s`` so that ``m0`` can be computed
    against the degree in ``x``.
    """

    coefficients: tuple
    roots: tuple
    degree: Optional[int] = None
    substitution: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_fraction(c) for c in self.coefficients))
        object.__setattr__(self, "roots", tuple(self.roots))
        if self.substitution < 1:
            raise ValueError("substitution exponent must be positive")
        if self.degree is not None and self.degree < 0:
            raise ValueError("degree must be nonnegative")
        kinds = {type(x) for x in self.roots}
        if len(kinds) > 1:
            raise TypeError("roots must be all disks or all factors")
        if self.mode == "factors":
            for i, q in enumerate(self.roots):
                if not q.is_full:
                    raise ValueError(f"factor {i} is truncated")
                if q.constant_term == 0:
                    raise ZeroRoot(f"factor {i} vanishes at 0; the zero root is tracked as m0")
        if len(self.coefficients) < len(self.roots):
            raise ValueError(f"{len(self.roots)} unknowns need at least as many coefficients, "
                             f"got {len(self.coefficients)}")

    @property
    def mode(self) -> str:
        if self.roots and isinstance(self.roots[0], MonicPoly):
            return "factors"
        return "disks"

    @property
    def factor_degrees(self) -> list:
        if self.mode == "factors":
            return [q.degree for q in self.roots]
        return [1] * len(self.roots)


@dataclass(frozen=True)
class MultiplicityResult:
    multiplicities: tuple
    m0: Optional[int] = None
    certified: bool = False
    residual_diameters: tuple = field(default_factory=tuple)
    precision_bits: Optional[int] = None


def substitute_codegrees(coefficients: Sequence, s: int) -> list:
    """Coefficients of the compressed polynomial in ``y = x^s``.

    ``coefficients[i - 1]`` is the codegree-``i`` coefficient. Codegrees not
    divisible by ``s`` must vanish.
    """
    if s < 1:
        raise ValueError("substitution exponent must be positive")
    coeffs = [as_fraction(c) for c in coefficients]
    for i, c in enumerate(coeffs, start=1):
        if i % s and c:
            raise NonZeroSkippedCoefficient(i)
    return [coeffs[j * s - 1] for j in range(1, len(coeffs) // s + 1)]


def snap_to_integer(disk: ComplexDisk, index=None) -> int:
    """The unique integer in a disk whose imaginary extent straddles 0."""
    re, im, r = mpq(disk.re), mpq(disk.im), mpq(disk.rad)
    lo, hi = re - r, re + r
    first, last = int(math.ceil(lo)), int(math.floor(hi))
    if abs(im) > r or first != last:
        raise AmbiguousDisk(index, disk.diameter())
    return first


def _zero_multiplicity(problem: PolyProblem, multiplicities) -> Optional[int]:
    if problem.degree is None:
        return None
    used = problem.substitution * sum(m * d for m, d in zip(multiplicities, problem.factor_degrees))
    m0 = problem.degree - used
    if m0 < 0:
        raise NegativeMultiplicity(f"multiplicities account for degree {used} > {problem.degree}")
    return m0


def default_precision(problem: PolyProblem) -> int:
    """Working precision derived from the planner's root-precision budget."""
    k = len(problem.roots)
    p = planner.plan(problem.roots, problem.coefficients[:k])
    return p.required_bits + WORKING_MARGIN


def solve_numeric(problem: PolyProblem, precision_bits: Optional[int] = None) -> MultiplicityResult:
    """Certified multiplicities of disk-enclosed distinct nonzero roots."""
    if problem.mode != "disks":
        raise TypeError("solve_numeric needs disk roots")
    k = len(problem.roots)
    if k == 0:
        return _solve_empty(problem)
    if precision_bits is None:
        precision_bits = default_precision(problem)
    disks = [d.with_prec(precision_bits) if d.prec < precision_bits else d for d in problem.roots]

    p = power_sums_from_coeffs(problem.coefficients[:k])
    inverse = v0_inverse(disks, "disk").product
    m_disks = []
    for row in inverse:
        acc = None
        for entry, pj in zip(row, p):
            if not pj:
                continue
            term = entry * pj
            acc = term if acc is None else acc + term
        m_disks.append(acc if acc is not None else ComplexDisk.exact(0, precision_bits))

    mult = []
    for i, d in enumerate(m_disks):
        try:
            value = snap_to_integer(d, i)
        except AmbiguousDisk:
            raise AmbiguousDisk(i, d.diameter(), _recommended_bits(problem)) from None
        if value < 1:
            raise NegativeMultiplicity(f"root {i} snapped to multiplicity {value}")
        mult.append(value)

    _check_surplus_disks(problem, disks, mult)
    return MultiplicityResult(tuple(mult), _zero_multiplicity(problem, mult), True,
                              tuple(d.diameter() for d in m_disks), precision_bits)


def _solve_empty(problem) -> MultiplicityResult:
    # p = x^n: every proper coefficient vanishes
    if any(problem.coefficients):
        raise InconsistentInput("nonzero coefficients but no nonzero roots")
    return MultiplicityResult((), _zero_multiplicity(problem, ()), True, (), None)


def _recommended_bits(problem) -> Optional[int]:
    try:
        return planner.plan(problem.roots, problem.coefficients[:len(problem.roots)]).required_bits
    except Exception:  # noqa: BLE001 - the recommendation is best effort
        return None


def _check_surplus_disks(problem, disks, mult):
    k = len(disks)
    if len(problem.coefficients) == k:
        return
    p = power_sums_from_coeffs(problem.coefficients)
    powers = list(disks)
    for j in range(1, len(p) + 1):
        if j > k:
            acc = None
            for m, x in zip(mult, powers):
                term = x * m
                acc = term if acc is None else acc + term
            if not acc.contains(p[j - 1]):
                raise InconsistentInput(f"power sum {j} disagrees with the recovered multiplicities")
        powers = [x * d for x, d in zip(powers, disks)]


def factor_power_sum_matrix(factors: Sequence[MonicPoly], size: int) -> list:
    """``V[j][i]`` = sum of the (j+1)-th powers of the roots of factor ``i``."""
    columns = [power_sums_of_poly_roots(q, size) for q in factors]
    return [[col[j] for col in columns] for j in range(size)]


def solve_exact(problem: PolyProblem) -> MultiplicityResult:
    """Exact multiplicities of known irreducible factors.

    Raises :class:`MatrixSingular` when the factor power-sum matrix is
    singular, i.e. when the first ``t`` coefficients cannot determine the
    exponents.
    """
    if problem.roots and problem.mode != "factors":
        raise TypeError("solve_exact needs factor roots")
    factors = problem.roots
    t = len(factors)
    if t == 0:
        return _solve_empty(problem)
    p = power_sums_from_coeffs(problem.coefficients)
    solution = exact_solve(factor_power_sum_matrix(factors, t), p[:t]) if t else []
    mult = []
    for i, x in enumerate(solution):
        if x.denominator != 1 or x < 1:
            raise NonIntegralSolution(f"factor {i} gets exponent {x}, not a positive integer")
        mult.append(int(x))

    if len(p) > t:
        columns = [power_sums_of_poly_roots(q, len(p)) for q in factors]
        for j in range(t, len(p)):
            if sum(m * col[j] for m, col in zip(mult, columns)) != p[j]:
                raise InconsistentInput(f"coefficient at codegree {j + 1} disagrees "
                                        "with the recovered exponents")
    return MultiplicityResult(tuple(mult), _zero_multiplicity(problem, mult), True, (), None)


def solve(problem: PolyProblem, precision_bits: Optional[int] = None) -> MultiplicityResult:
    if problem.mode == "factors":
        return solve_exact(problem)
    return solve_numeric(problem, precision_bits)
