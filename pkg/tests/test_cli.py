"""CLI surface: exit codes, report shapes, and format round-trips."""

import io
import json
import sys

import pytest

from logconcave import cli
from logconcave.errors import FatalInconsistency
from logconcave.families import gen_g
from logconcave.geometry import minkowski_sum, parse_pointset
from logconcave.limits import set_limits
from logconcave.polynomials import parse_polynomial
from logconcave.sps import parse_sps

KURTZ_OK = "0 1\n1 3\n2 2\n"  # 9 > 8
KURTZ_BOUNDARY = "0 1\n1 2\n2 1\n"  # 4 = 4
SMALL_SPS = (
    '{"products": [[{"terms": [[0, "1"], [1, "1"]]},'
    ' {"terms": [[0, "1"], [1, "2^2"]]}]]}'
)
# single dense factor with huge concave exponents: strong condition holds
STRONG_SPS = '{"products": [[{"terms": [[0,"1"],[1,"2^128"],[2,"2^128"],[3,"1"]]}]]}'
POINTS_CSV = "0,1,0,0\n1,1,2,1\n2,1,2,0\n-1,3,-1,2\n"


@pytest.fixture
def run(capsys, monkeypatch):
    def _run(*argv, stdin=None):
        if stdin is not None:
            monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        code = cli.main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def poly_file(tmp_path):
    def _write(text, name="p.poly"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


class TestConditionChecks:
    def test_kurtz_holds(self, run, poly_file):
        code, out, _ = run("check-kurtz", poly_file(KURTZ_OK))
        assert code == 0
        assert json.loads(out) == {"holds": True, "failures": []}

    def test_kurtz_boundary_fails(self, run, poly_file):
        code, out, _ = run("check-kurtz", poly_file(KURTZ_BOUNDARY))
        assert code == 1
        assert json.loads(out) == {"holds": False, "failures": [1]}

    def test_kurtz_from_stdin(self, run):
        code, out, _ = run("check-kurtz", "-", stdin=KURTZ_OK)
        assert code == 0 and json.loads(out)["holds"] is True

    def test_newton_strict(self, run, poly_file):
        code, out, _ = run("check-newton", poly_file("0 6\n1 11\n2 6\n3 1\n"))
        report = json.loads(out)
        assert code == 0
        assert report == {"holds_weak": True, "holds_strict": True, "failures": []}

    def test_newton_weak_only(self, run, poly_file):
        code, out, _ = run("check-newton", poly_file("0 1\n1 3\n2 3\n3 1\n"))
        report = json.loads(out)
        assert code == 0
        assert report["holds_weak"] and not report["holds_strict"]

    def test_newton_needs_degree_two(self, run, poly_file):
        code, _, err = run("check-newton", poly_file("0 1\n1 1\n"))
        assert code == 1 and "not applicable" in err

    def test_strong(self, run, poly_file):
        code, out, _ = run("check-strong", poly_file("0 1\n1 2^32\n2 2^32\n3 1\n"))
        assert code == 0 and json.loads(out)["holds"] is True

    def test_sturm_signed(self, run, poly_file):
        code, out, _ = run("sturm", poly_file("0 -6\n1 11\n2 -6\n3 1\n"))
        assert code == 0
        assert json.loads(out) == {"distinct_real_roots": 3}

    def test_format_error(self, run, poly_file):
        code, _, err = run("check-kurtz", poly_file("0 1 2\n"))
        assert code == 2 and "error" in err

    def test_missing_file(self, run):
        code, _, err = run("check-kurtz", "/no/such/file")
        assert code == 2 and "cannot read" in err


class TestSpsCommands:
    def test_expand_text(self, run, poly_file):
        code, out, _ = run("expand", poly_file(SMALL_SPS, "e.json"))
        assert code == 0
        assert out == "0 1\n1 5\n2 2^2\n"

    def test_expand_json(self, run, poly_file):
        code, out, _ = run("expand", poly_file(SMALL_SPS, "e.json"), "--format", "json")
        assert json.loads(out) == {
            "degree": 2,
            "coefficients": [[0, "1"], [1, "5"], [2, "2^2"]],
        }

    def test_params(self, run, poly_file):
        code, out, _ = run("params", poly_file(SMALL_SPS, "e.json"))
        assert code == 0
        assert json.loads(out) == {"k": 1, "m": 2, "t": 2, "d": 2}

    def test_verify_thm2_not_applicable(self, run, poly_file):
        code, out, _ = run("verify-thm2", poly_file(SMALL_SPS, "e.json"))
        assert code == 1
        assert json.loads(out)["applicable"] is False

    def test_verify_thm2_applicable(self, run, poly_file):
        code, out, _ = run("verify-thm2", poly_file(STRONG_SPS, "s.json"))
        report = json.loads(out)
        assert code == 0
        assert report["applicable"] and report["bound_holds"]
        assert report["d"] == 3

    def test_witness(self, run, poly_file):
        code, out, _ = run("witness", poly_file(STRONG_SPS, "s.json"))
        report = json.loads(out)
        assert code == 0
        assert report["factor_terms"] == 4
        assert report["dominant_exponents"] == [1, 2, 3]
        assert report["threshold"] == "3"

    def test_witness_not_applicable(self, run, poly_file):
        code, _, err = run("witness", poly_file(SMALL_SPS, "e.json"))
        assert code == 1 and "not applicable" in err

    def test_lift_frozen(self, run, poly_file):
        code, out, _ = run("lift", poly_file(SMALL_SPS, "e.json"), "--tau", "4")
        report = json.loads(out)
        assert code == 0
        assert report["peaks"] == ["2^2", "2^2"]
        assert report["steps"] == [1, 0]
        assert report["max_step"] == 1 and report["stride"] == 1
        assert len(report["chain"]) == 2

    def test_lift_tau_from_file_and_override(self, run, poly_file):
        with_tau = SMALL_SPS.replace('{"products"', '{"tau": "4", "products"')
        path = poly_file(with_tau, "t.json")
        code, out, _ = run("lift", path)
        assert code == 0 and json.loads(out)["tau"] == "4"
        code, out, _ = run("lift", path, "--tau", "2")
        assert code == 0 and json.loads(out)["tau"] == "2"

    def test_verify_lift(self, run, poly_file):
        code, out, _ = run("verify-lift", poly_file(SMALL_SPS, "e.json"))
        report = json.loads(out)
        assert code == 0
        assert report == {
            "holds": True,
            "chain_in_cover": True,
            "chain_independent": True,
            "grid_covered": True,
            "size": 2,
        }

    def test_verify_lift_precondition(self, run, poly_file):
        not_concave = '{"products": [[{"terms": [[0,"1"],[1,"1"]]}, {"terms": [[0,"1"],[1,"1"]]}]]}'
        code, _, err = run("verify-lift", poly_file(not_concave, "n.json"))
        assert code == 1 and "not applicable" in err

    def test_split_round_trip(self, run, poly_file):
        three = (
            '{"products": [[{"terms": [[0,"1"],[1,"1"]]},'
            ' {"terms": [[0,"1"],[1,"1"]]}, {"terms": [[0,"1"],[1,"2"]]}]]}'
        )
        code, out, _ = run("split", poly_file(three, "m.json"))
        assert code == 0
        e, tau = parse_sps(out)
        assert tau is None
        assert all(len(row) == 2 for row in e.products)

    def test_split_needs_two_factors(self, run, poly_file):
        single = '{"products": [[{"terms": [[0,"1"],[1,"1"]]}]]}'
        code, _, err = run("split", poly_file(single, "s.json"))
        assert code == 1

    def test_bounds_report(self, run, poly_file):
        code, out, _ = run("bounds", poly_file(SMALL_SPS, "e.json"))
        report = json.loads(out)
        assert code == 0
        assert report["d"] == 2 and report["trivial"] == 4 and report["thm2"] == 4
        assert isinstance(report["thm1_shape_approx"], float)

    def test_bad_json(self, run, poly_file):
        code, _, err = run("params", poly_file("not json", "bad.json"))
        assert code == 2


class TestGeometryCommands:
    def test_hull_json(self, run, poly_file):
        code, out, _ = run("hull", poly_file(POINTS_CSV, "p.csv"), "--tau", "4")
        report = json.loads(out)
        assert code == 0
        assert report["size"] == 4 == len(report["vertices"])
        assert set(report["vertices"][0]) == {"x", "mantissa", "pow2", "tau_halves", "r"}

    def test_hull_csv_reparses(self, run, poly_file):
        code, out, _ = run(
            "hull", poly_file(POINTS_CSV, "p.csv"), "--tau", "4", "--format", "csv"
        )
        assert code == 0
        assert len(parse_pointset(out)) == 4

    def test_minkowski_csv_round_trip(self, run, poly_file):
        a, b = "0,1,0,0\n1,3,1,0\n", "0,1,0,1\n2,5,-1,0\n"
        code, out, _ = run(
            "minkowski", poly_file(a, "a.csv"), poly_file(b, "b.csv")
        )
        assert code == 0
        assert parse_pointset(out) == minkowski_sum(parse_pointset(a), parse_pointset(b))

    def test_chain(self, run, poly_file):
        code, out, _ = run("chain", poly_file(POINTS_CSV, "p.csv"), "--tau", "4")
        report = json.loads(out)
        assert code == 0
        assert report["size"] == 4 == len(report["vertices"])

    def test_tau_must_exceed_one(self, run, poly_file):
        code, _, err = run("hull", poly_file(POINTS_CSV, "p.csv"), "--tau", "1")
        assert code == 2

    def test_bad_tau_literal(self, run, poly_file):
        code, _, _ = run("hull", poly_file(POINTS_CSV, "p.csv"), "--tau", "abc")
        assert code == 2

    def test_env_limit_applies(self, run, poly_file, monkeypatch):
        monkeypatch.setenv("LOGCONCAVE_MAX_CHAIN_POINTS", "2")
        try:
            code, _, err = run("chain", poly_file(POINTS_CSV, "p.csv"))
            assert code == 2 and "max_chain_points" in err
        finally:
            set_limits(max_chain_points=400)


class TestGenerators:
    def test_gen_g_round_trip(self, run):
        code, out, _ = run("gen-g", "--n", "3", "--s", "2")
        assert code == 0
        assert "2^12" in out
        assert parse_polynomial(out) == gen_g(3, 2)

    def test_gen_f_frozen(self, run):
        code, out, _ = run("gen-f", "--n", "2")
        assert code == 0
        assert out == "0 1\n1 2^32\n2 2^32\n3 1\n"

    def test_gen_f_cap(self, run):
        code, _, err = run("gen-f", "--n", "13")
        assert code == 2 and "cap" in err

    def test_gen_h(self, run):
        code, out, _ = run("gen-h", "--n", "2")
        report = json.loads(out)
        assert code == 0
        assert report["n"] == 2 and len(report["monomials"]) == 4
        assert all(
            len(m["alpha"]) == 2 and len(m["beta"]) == 8 for m in report["monomials"]
        )

    def test_verify_identity(self, run):
        code, out, _ = run("verify-identity", "--n", "3")
        assert code == 0
        assert json.loads(out) == {"n": 3, "coefficients": 8, "matches": True}

    def test_verify_identity_cap(self, run):
        code, _, _ = run("verify-identity", "--n", "4")
        assert code == 2


class TestSearchCommand:
    def test_jsonl_and_determinism(self, run):
        code, out1, _ = run("search", "--seed", "7", "--trials", "120")
        assert code == 0
        lines = [json.loads(line) for line in out1.strip().splitlines()]
        assert lines, "expected at least the summary line"
        summary = lines[-1]
        assert summary["trials"] == 120
        for line in lines[:-1]:
            assert line["d"] <= line["trivial"]
            assert "products" in line["expression"]
        code, out2, _ = run("search", "--seed", "7", "--trials", "120")
        assert out1 == out2


class TestWiring:
    def test_unknown_command(self, run):
        code, _, _ = run("no-such-command")
        assert code == 2

    def test_no_args(self, run):
        code, _, _ = run()
        assert code == 2

    def test_help_exits_zero(self, run):
        code, _, _ = run("--help")
        assert code == 0

    def test_fatal_maps_to_three(self, run, poly_file, monkeypatch):
        def boom(_):
            raise FatalInconsistency("wiring probe")

        monkeypatch.setattr(cli, "check_kurtz", boom)
        code, _, err = run("check-kurtz", poly_file(KURTZ_OK))
        assert code == 3 and "fatal inconsistency" in err

    def test_selftest_wiring(self, run, monkeypatch):
        class Fake:
            def __init__(self, passed):
                self.passed = passed
                self.line = f"[{'PASS' if passed else 'FAIL'}] fake"

        monkeypatch.setattr(cli, "run_all", lambda emit: [Fake(True), Fake(True)])
        assert run("selftest")[0] == 0
        monkeypatch.setattr(cli, "run_all", lambda emit: [Fake(True), Fake(False)])
        assert run("selftest")[0] == 1
