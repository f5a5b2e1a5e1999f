import random
from fractions import Fraction

import pytest

from rootmult.ball import ComplexDisk as D
from rootmult.errors import (AmbiguousDisk, InconsistentInput, MatrixSingular, NegativeMultiplicity,
                             NonIntegralSolution, NonZeroSkippedCoefficient, ZeroRoot)
from rootmult.exactq import ComplexRational as Q, MonicPoly, coeffs_from_power_sums
from rootmult.solver import (PolyProblem, snap_to_integer, solve, solve_exact, solve_numeric,
                             substitute_codegrees)
from rootmult.verify import expand_product

from conftest import load_fixture


def factors_of(fixture):
    return [MonicPoly.from_dense(f) for f in fixture["roots"]]


def y_coefficients(fixture):
    s = int(fixture["substitution"])
    c = fixture["coefficients"]
    return [c[str(s * j)] for j in range(1, len(c) + 1)]


def test_single_disk():
    r = solve_numeric(PolyProblem([-7], [D.exact(1, radius=Fraction(1, 2 ** 30))]))
    assert r.multiplicities == (7,) and r.certified


def test_linear_factor_substitution():
    for d in (1, 5, 100):
        r = solve_exact(PolyProblem([-2 * d], [MonicPoly.from_dense([1, -2])], degree=d))
        assert r.multiplicities == (d,) and r.m0 == 0


def test_singular_system():
    with pytest.raises(MatrixSingular):
        solve_exact(PolyProblem([0], [MonicPoly.from_dense([1, 0, -2])]))


def test_rowling_exact():
    fx = load_fixture("rowling.json")
    r = solve(PolyProblem(y_coefficients(fx), factors_of(fx), 448, 3))
    assert r.multiplicities == (27, 12, 6, 3) and r.m0 == 133


def test_rowling_disks():
    fx = load_fixture("rowling-disks.json")
    roots = [D.from_strings(e["re"], e["im"], e["radius"], 800) for e in fx["roots"]]
    r = solve(PolyProblem(y_coefficients(fx), roots, 448, 3))
    assert r.multiplicities == (27, 12, 12, 12, 12, 12, 6, 6, 3, 3)
    assert r.m0 == 133


def test_numeric_surplus_coefficients_checked():
    roots = [D.exact(1, 128), D.exact(-2, 128)]
    c = coeffs_from_power_sums([3 + 2 * (-2) ** j for j in range(1, 5)])
    r = solve_numeric(PolyProblem(c, roots))
    assert r.multiplicities == (3, 2)
    bad = c[:3] + [c[3] + 1]
    with pytest.raises(InconsistentInput):
        solve_numeric(PolyProblem(bad, roots))


def test_exact_surplus_and_integrality():
    q1, q2 = MonicPoly.from_dense([1, -1]), MonicPoly.from_dense([1, -3])
    c = expand_product([q1, q2], [4, 2], 4)
    assert solve_exact(PolyProblem(c, [q1, q2], 6)).multiplicities == (4, 2)
    with pytest.raises(InconsistentInput):
        solve_exact(PolyProblem(c[:3] + [c[3] + 1], [q1, q2]))
    with pytest.raises(NonIntegralSolution):
        solve_exact(PolyProblem([Fraction(-1, 2)], [q1]))


def test_negative_m0():
    with pytest.raises(NegativeMultiplicity):
        solve_exact(PolyProblem([-3], [MonicPoly.from_dense([1, -1])], degree=2))


def test_ambiguous_disk_carries_recommendation():
    roots = [D.exact(1, radius=Fraction(1, 10)), D.exact(3, radius=Fraction(1, 10))]
    c = coeffs_from_power_sums([5 + 3 * 3, 5 + 3 * 9])
    with pytest.raises(AmbiguousDisk) as info:
        solve_numeric(PolyProblem(c, roots), precision_bits=64)
    assert info.value.recommended_bits is not None


def test_empty_problem():
    r = solve(PolyProblem([0, 0], [], degree=9))
    assert r.multiplicities == () and r.m0 == 9
    with pytest.raises(InconsistentInput):
        solve(PolyProblem([1], [], degree=9))


def test_problem_validation():
    with pytest.raises(ZeroRoot):
        PolyProblem([0], [MonicPoly.from_dense([1, 0])])
    with pytest.raises(ValueError):
        PolyProblem([], [D.exact(1)])
    with pytest.raises(TypeError):
        PolyProblem([1, 2], [D.exact(1), MonicPoly.from_dense([1, 1])])


def test_substitute_codegrees():
    assert substitute_codegrees([0, 0, -240, 0, 0, 28320], 3) == [-240, 28320]
    with pytest.raises(NonZeroSkippedCoefficient) as info:
        substitute_codegrees([0, 1, 5], 3)
    assert info.value.codegree == 2


def test_snap():
    assert snap_to_integer(D.exact(Fraction(29, 10), radius=Fraction(1, 5))) == 3
    with pytest.raises(AmbiguousDisk):
        snap_to_integer(D.exact(Fraction(7, 2), radius=Fraction(3, 5)))
    with pytest.raises(AmbiguousDisk):
        snap_to_integer(D.exact(Q(3, 1), radius=Fraction(1, 2)))


def test_complex_roots_numeric():
    # conjugate pairs share a multiplicity, so the coefficients are rational
    rng = random.Random(5)
    pairs = [Q(1, 1), Q(0, Fraction(1, 2))]
    roots, m = [Q(-2)], [rng.randint(1, 50)]
    for z in pairs:
        k = rng.randint(1, 50)
        roots += [z, z.conjugate()]
        m += [k, k]
    p = [sum((mi * z ** j for mi, z in zip(m, roots)), Q(0)) for j in range(1, len(roots) + 1)]
    assert all(not x.imag for x in p)
    c = coeffs_from_power_sums([x.real for x in p])
    res = solve_numeric(PolyProblem(c, [D.exact(z, 256) for z in roots]))
    assert list(res.multiplicities) == m
