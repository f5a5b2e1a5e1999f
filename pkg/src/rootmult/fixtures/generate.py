"""Regenerate the derived fixtures.

``python3 -m rootmult.fixtures.generate [outdir]`` writes

* ``rowling-disks.json`` - the Rowling spectrum as certified root disks in
  ``y = x^3``, with c_3..c_30 obtained by exact expansion of the factored
  polynomial (the first four agree with ``rowling.json``);
* ``xn-minus-1.json`` - problems for ``x^n - 1`` with exact rational disk
  centers enclosing the n-th roots of unity, for n in 4, 8, 16.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

from gmpy2 import mpq

from ..ball import sci
from ..exactq import MonicPoly
from ..roots import enclose_roots
from ..verify import expand_product

HERE = Path(__file__).resolve().parent
ROOT_PREC = 640
DIGITS = 160
XN_SIZES = (4, 8, 16)


def load(name: str) -> dict:
    with open(HERE / name, encoding="utf-8") as fh:
        return json.load(fh)


def _radius_string(rad: Fraction) -> str:
    # smallest power of ten that still covers rad
    if not rad:
        return "0"
    e = len(str(rad.numerator)) - len(str(rad.denominator)) - 1
    while Fraction(10) ** e < rad:
        e += 1
    return f"1e{e}"


def disk_entries(factors, multiplicities, prec=ROOT_PREC, digits=DIGITS):
    """Decimal disk entries for every root of every factor, plus per-root multiplicities."""
    entries, mult = [], []
    for q, m in zip(factors, multiplicities):
        for d in enclose_roots(q, prec):
            parts = (mpq(d.re), mpq(d.im))
            texts = [sci(x, digits) for x in (d.re, d.im)]
            slack = sum(abs(Fraction(t) - Fraction(int(x.numerator), int(x.denominator)))
                        for t, x in zip(texts, parts))
            rad = Fraction(int(mpq(d.rad).numerator), int(mpq(d.rad).denominator)) + slack
            entries.append({"re": texts[0], "im": texts[1], "radius": _radius_string(rad)})
            mult.append(m)
    return entries, mult


def rowling_disks() -> tuple:
    """(problem dict, expected per-root multiplicities)."""
    base = load("rowling.json")
    factors = [MonicPoly.from_dense(f) for f in base["roots"]]
    exponents = (27, 12, 6, 3)
    total = sum(q.degree for q in factors)
    coeffs = expand_product(factors, exponents, total)
    s = int(base["substitution"])
    entries, mult = disk_entries(factors, exponents)
    problem = {
        "description": f"Rowling spectrum as {total} root disks in y = x^3; "
                       f"coefficients c_3..c_{3 * total} by exact expansion",
        "mode": "disks",
        "degree": base["degree"],
        "substitution": base["substitution"],
        "coefficients": {str(s * (j + 1)): str(c) for j, c in enumerate(coeffs)},
        "roots": entries,
    }
    return problem, mult


def xn_minus_1(n: int) -> dict:
    """``x^n - 1``: every n-th root of unity once, coefficients c_1..c_n."""
    q = MonicPoly.from_coefficients([0] * (n - 1) + [-1])
    entries, _ = disk_entries([q], [1])
    return {
        "description": f"x^{n} - 1",
        "mode": "disks",
        "degree": str(n),
        "coefficients": {str(j): ("-1" if j == n else "0") for j in range(1, n + 1)},
        "roots": entries,
    }


def _dump(obj, path: Path):
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else HERE
    problem, _ = rowling_disks()
    _dump(problem, out / "rowling-disks.json")
    _dump({str(n): xn_minus_1(n) for n in XN_SIZES}, out / "xn-minus-1.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
