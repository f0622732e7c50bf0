import json

import pytest

from cherednik.cli import (
    CheckRecord, CheckSyntaxError, Report, SuiteConfig, UnknownSymbol, emit_report, evaluate_check, main,
    parse_expression, plan, run_suite,
)
from cherednik.field import ONE, Q, sym
from cherednik.presentations import CATALOGUE, gens
from cherednik.qmat import NoInverseAvailable

V0, V1, Vc0, Vc1, T1 = gens("V0", "V1", "Vc0", "Vc1", "T1")


def test_parse_product_relation():
    assert parse_expression("Vc1*V1*V0*Vc0 - q^(-1/2)").terms == (Vc1 * V1 * V0 * Vc0 - ONE / Q).terms
    assert parse_expression("Vc1*V1*V0*Vc0 - q^(-1/2)").terms == dict(CATALOGUE["H"].relations)["daha5"].terms


def test_parse_quadratic_relation():
    ab = sym("a") * sym("b")
    assert parse_expression("(T1 + a*b)*(T1 + 1)").terms == ((T1 + ab) * (T1 + 1)).terms


def test_parse_is_whitespace_insensitive():
    assert parse_expression(" V0 ^ 2-  k0*V0 ").terms == parse_expression("V0^2-k0*V0").terms


def test_parse_errors_carry_positions():
    with pytest.raises(UnknownSymbol) as e:
        parse_expression("V0 + zeta")
    assert e.value.position == 5
    with pytest.raises(CheckSyntaxError) as e:
        parse_expression("V0 + * V1")
    assert e.value.position == 5
    with pytest.raises(CheckSyntaxError):
        parse_expression("(V0 + V1")
    with pytest.raises(CheckSyntaxError):
        parse_expression("a^(1/2)")


def test_inverse_is_rejected_at_evaluation():
    with pytest.raises(NoInverseAvailable):
        evaluate_check("V0^(-1) == 0 in H_V")


def test_adhoc_checks():
    assert evaluate_check("Vc1*V1*V0*Vc0 - q^(-1/2) == 0 in H").ok
    bad = evaluate_check("Vc1*V1*V0*Vc0 + q^(-1/2) == 0 in H")
    assert not bad.ok and bad.records[0].residual
    assert evaluate_check("e*e - e == 0 in H_III_D7").ok


def test_empty_report():
    assert emit_report(Report(), "text") == "0 checks\n"
    assert json.loads(emit_report(Report(), "json")) == []


def test_single_passing_record_has_empty_residual():
    out = json.loads(emit_report(Report([CheckRecord("x", "anchor", "pass")]), "json"))
    assert out == [{"anchor": "anchor", "check_id": "x", "ms": None, "residual": "", "verdict": "pass"}]


def test_trivial_eigen_run():
    rep = run_suite(SuiteConfig(suites=("eigen",), algebra="AW", max_n=0))
    assert [r.check_id for r in rep.records] == ["eigen/AW/n=0"]
    assert rep.exit_status() == 0


def test_budget_exhaustion_fails_the_run():
    rep = run_suite(SuiteConfig(suites=("rewrite",), budget=1))
    assert rep.exit_status() == 1
    assert any(r.residual == "budget exhausted" for r in rep.records)


def test_basis_fallback_policy():
    rep = Report([CheckRecord("x", "", "pass-basis(16)")])
    assert rep.exit_status(True) == 0
    assert rep.exit_status(False) == 1


def test_plan_is_sorted_and_filtered():
    ids = [g.group_id for g in plan(SuiteConfig())]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert {g.suite for g in plan(SuiteConfig(algebra="H_IV"))} >= {"presentations", "spherical", "zhedanov"}


def test_reports_are_deterministic_across_job_counts():
    config = SuiteConfig(suites=("presentations", "classical"), fmt="json")
    one = emit_report(run_suite(config), "json")
    again = emit_report(run_suite(config), "json")
    parallel = emit_report(run_suite(SuiteConfig(suites=("presentations", "classical"), jobs=3)), "json")
    assert one == again == parallel


def test_main_exit_codes(capsys):
    assert main(["--suite", "eigen", "--algebra", "AW", "--max-n", "0"]) == 0
    assert "1 checks, 1 passed, 0 failed" in capsys.readouterr().out
    assert main(["--check", "Vc1*V1*V0*Vc0 + 1 == 0 in H"]) == 1
    assert main(["--check", "V0 + nope == 0 in H"]) == 2
    assert main(["--suite", "eigen", "--algebra", "nothing"]) == 2
    assert main(["--max-n", "-1"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["--suite", "bogus"])
    assert e.value.code == 2


def test_json_schema_fields(capsys):
    main(["--suite", "eigen", "--algebra", "Z_I", "--max-n", "1", "--format", "json"])
    rows = json.loads(capsys.readouterr().out)
    assert [r["check_id"] for r in rows] == ["eigen/LittleQLaguerreA0/n=0", "eigen/LittleQLaguerreA0/n=1"]
    assert all(set(r) == {"check_id", "anchor", "verdict", "residual", "ms"} for r in rows)
