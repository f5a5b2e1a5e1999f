import cmath
import io
import json
import math

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from rootmult import cli
from rootmult.cli import ResultFile, main

from conftest import FIXTURES


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return path


def test_solve_rowling(tmp_path):
    code, text = run("solve", FIXTURES / "rowling.json", "--json")
    assert code == 0
    res = ResultFile.from_json(text)
    assert res.multiplicities == (27, 12, 6, 3) and res.m0 == 133 and res.certified
    assert res.verification["coefficients_match"] is True


def test_solve_hummingbird():
    code, text = run("solve", FIXTURES / "hummingbird.json", "--json")
    assert code == 0
    res = ResultFile.from_json(text)
    assert res.m0 == 20983
    assert res.multiplicities == (729, 972, 1782, 486, 324, 216, 54, 1197, 243)


def test_singular_exit_code(capsys):
    code, _ = run("solve", FIXTURES / "xsquared-minus-2.json")
    assert code == cli.EXIT_SINGULAR
    assert "singular" in capsys.readouterr().err


def test_plan_outputs(tmp_path):
    code, text = run("plan", FIXTURES / "rowling.json")
    assert code == 0 and "bound bits" in text and "epsilon" in text
    code, text = run("plan", FIXTURES / "rowling-disks.json", "--json")
    data = json.loads(text)
    assert code == 0 and data["n"] == 10
    one = write(tmp_path, "one.json", {"mode": "disks", "coefficients": {"1": "-1/3"},
                                      "roots": [{"re": "1/3"}]})
    code, text = run("plan", one, "--json")
    data = json.loads(text)
    assert code == 0 and data["M"] == data["m"] == data["R"] == data["c"] == "1.000000e+0"


def test_solve_disks_and_verify(tmp_path):
    out = tmp_path / "r.json"
    code, _ = run("solve", FIXTURES / "rowling-disks.json", "-o", out)
    assert code == 0
    res = cli.load_result(out)
    assert res.multiplicities == (27, 12, 12, 12, 12, 12, 6, 6, 3, 3) and res.m0 == 133
    assert res.plan is not None and res.precision_bits >= int(res.plan["required_bits"])
    assert run("verify", FIXTURES / "rowling-disks.json", out)[0] == 0


def test_verify_rejects_tamper(tmp_path):
    out = tmp_path / "r.json"
    run("solve", FIXTURES / "rowling.json", "-o", out)
    assert run("verify", FIXTURES / "rowling.json", out) == (0, "coefficients match: yes\ndegree match: yes\n")
    data = json.loads(out.read_text())
    data["multiplicities"]["0"] += 1
    bad = write(tmp_path, "bad.json", data)
    code, text = run("verify", FIXTURES / "rowling.json", bad)
    assert code == cli.EXIT_VERIFY and "first mismatch at codegree 3" in text


def test_pure_power(tmp_path):
    prob = write(tmp_path, "p.json", {"mode": "factors", "degree": "12", "coefficients": {}, "roots": []})
    out = tmp_path / "r.json"
    assert run("solve", prob, "-o", out)[0] == 0
    assert cli.load_result(out).m0 == 12
    assert run("verify", prob, out)[0] == 0


def test_retry_doubling(tmp_path):
    # m = (3, 2): p1 = 9/7, p2 = 55/147
    prob = {"mode": "disks", "coefficients": {"1": "-9/7", "2": "94/147"},
            "roots": [{"re": "1/3", "radius": "0"}, {"re": "1/7", "radius": "0"}],
            "precision_bits": "4"}
    path = write(tmp_path, "p.json", prob)
    assert run("solve", path)[0] == cli.EXIT_PRECISION
    code, text = run("solve", path, "--retry-doubling", "--json")
    assert code == 0
    res = ResultFile.from_json(text)
    assert res.multiplicities == (3, 2) and res.precision_bits > 4


def test_retry_stops_when_radii_dominate(tmp_path):
    prob = {"mode": "disks", "coefficients": ["-4", "5"],
            "roots": [{"re": "1", "radius": "1/10"}, {"re": "3", "radius": "1/10"}]}
    path = write(tmp_path, "p.json", prob)
    assert run("solve", path, "--retry-doubling")[0] == cli.EXIT_PRECISION


def test_substitution_skipped_coefficient(tmp_path, capsys):
    prob = {"mode": "factors", "substitution": "3", "coefficients": {"2": "1", "3": "-2"},
            "roots": [["1", "-2"]]}
    assert run("solve", write(tmp_path, "p.json", prob))[0] == cli.EXIT_PARSE
    assert "codegree 2" in capsys.readouterr().err
    prob["coefficients"] = {"2": "0", "3": "-2"}
    code, text = run("solve", write(tmp_path, "p.json", prob))
    assert code == 0 and "multiplicity 1" in text


MALFORMED = [
    "not json",
    "[]",
    {"mode": "disks", "coefficients": {"1": -1}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"1": -1.0}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"1": "-1"}, "roots": [{"re": 1.0}]},
    {"mode": "disks", "coefficients": {"1": "-1"}, "roots": [{"re": "1"}], "extra": 1},
    {"mode": "disk", "coefficients": {"1": "-1"}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"2": "-1"}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"0": "-1"}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"1": "x"}, "roots": [{"re": "1"}]},
    {"mode": "disks", "coefficients": {"1": "-1"}, "roots": [{"re": "0"}]},
    {"mode": "disks", "coefficients": {"1": "-1"}, "roots": [{"re": "1", "radius": "-1"}]},
    {"mode": "factors", "coefficients": {"1": "-1"}, "roots": [["2", "-1"]]},
    {"mode": "factors", "coefficients": {"1": "-1"}, "roots": [["1", "0"]]},
    {"mode": "factors", "coefficients": {}, "roots": [["1", "-1"]]},
    {"mode": "factors", "coefficients": {"1": "-1"}},
    {"mode": "factors", "coefficients": {"1": "-1"}, "roots": [["1", "-1"]], "degree": "1.5"},
    {"mode": "factors", "coefficients": {"1": "-1"}, "roots": [["1", "-1"]], "substitution": "0"},
]


@pytest.mark.parametrize("data", MALFORMED)
def test_malformed_problems_exit_2(tmp_path, data):
    path = write(tmp_path, "p.json", data)
    for cmd in ("solve", "plan"):
        assert run(cmd, path)[0] == cli.EXIT_PARSE


def test_duplicate_keys_rejected(tmp_path):
    path = write(tmp_path, "p.json", '{"mode": "disks", "mode": "disks", "coefficients": [], "roots": []}')
    assert run("solve", path)[0] == cli.EXIT_PARSE


def test_missing_file():
    assert run("solve", "/nonexistent/problem.json")[0] == cli.EXIT_PARSE


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-5, 5) | st.floats(allow_nan=False, allow_infinity=False)
    | st.text(max_size=6) | st.sampled_from(["1", "-1", "0", "1/2", "3"]),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.sampled_from(["1", "2", "re", "im", "radius"]), inner, max_size=3),
    max_leaves=8,
)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.sampled_from(["mode", "coefficients", "degree", "substitution", "roots", "precision_bits"]), json_values)
def test_random_field_corruption_never_crashes(tmp_path, key, value):
    base = {"mode": "disks", "coefficients": {"1": "-3", "2": "2"},
            "roots": [{"re": "1", "radius": "0"}, {"re": "-1/2", "radius": "0"}]}
    base[key] = value
    path = write(tmp_path, "p.json", base)
    code, _ = run("solve", path)
    assert code in (0, 2, 3, 4, 5)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 10 ** 30), max_size=6), st.none() | st.integers(0, 10 ** 6), st.booleans(),
       st.none() | st.integers(2, 10 ** 6), st.sampled_from(["disks", "factors"]))
def test_result_round_trip(mult, m0, certified, bits, mode):
    res = ResultFile(mode, tuple(mult), m0, certified, bits, None,
                     {"coefficients_match": True, "first_mismatch": None, "degree_match": None},
                     {"mode": mode, "coefficients": {"1": "-1"}})
    assert ResultFile.from_json(res.to_json()) == res
    assert ResultFile.from_json(res.to_json()).to_json() == res.to_json()


def test_malformed_result(tmp_path):
    path = write(tmp_path, "r.json", {"mode": "disks"})
    assert run("plot", path, "-o", tmp_path / "x.svg")[0] == cli.EXIT_PARSE
    assert run("verify", FIXTURES / "rowling.json", path)[0] == cli.EXIT_PARSE


def _markers(svg):
    return [line for line in svg.splitlines() if line.startswith("<circle")]


def test_plot_rowling(tmp_path):
    out = tmp_path / "r.json"
    run("solve", FIXTURES / "rowling.json", "-o", out)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run("plot", out, "-o", a)[0] == 0
    assert run("plot", out, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    circles = _markers(a.read_text())
    # 10 distinct y-roots, three cube roots each, plus the origin
    assert len(circles) == 31
    assert sum('data-multiplicity="133"' in c for c in circles) == 1


def test_plot_single_root(tmp_path):
    prob = write(tmp_path, "p.json", {"mode": "disks", "coefficients": ["-2"], "roots": [{"re": "2"}]})
    out = tmp_path / "r.json"
    assert run("solve", prob, "-o", out)[0] == 0
    svg = tmp_path / "s.svg"
    run("plot", out, "-o", svg)
    assert len(_markers(svg.read_text())) == 1


def test_plot_hummingbird_rotation_invariant(tmp_path):
    out = tmp_path / "r.json"
    run("solve", FIXTURES / "hummingbird.json", "-o", out)
    markers = cli.plot_markers(cli.load_result(out))
    assert len(markers) == 51
    w = cmath.exp(2j * math.pi / 3)
    for z, m in markers:
        assert any(abs(z * w - u) < 1e-9 and m == k for u, k in markers)
