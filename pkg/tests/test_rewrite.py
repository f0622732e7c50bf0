import pytest

from cherednik.presentations import CATALOGUE, gens
from cherednik.rewrite import (
    BudgetExhausted, Trace, check_commutation, check_printed_expansions, check_spherical, check_zhedanov_iso,
    derived_rule_checks, normalize, printed_expansions, rewrite_system, verify_identity,
)

ALGS = ("H_III_D7", "H_III_D8")
X, W, T0, T1 = gens("X", "W", "T0", "T1")


@pytest.mark.parametrize("alg", ALGS)
def test_defining_relations_reduce_to_zero(alg):
    rules = rewrite_system(alg)
    for rid, rel in CATALOGUE[alg].relations:
        assert normalize(rel, rules).is_zero(), rid


@pytest.mark.parametrize("alg", ALGS)
def test_normal_form_is_idempotent(alg):
    rules = rewrite_system(alg)
    e = T0 * T1 * X * W * T0 + X * X * T1 * T0
    nf = normalize(e, rules)
    assert normalize(nf, rules).terms == nf.terms


def test_expansions_verify():
    assert check_printed_expansions().ok


def test_typeset_sign_in_one_expansion_fails():
    rep = check_printed_expansions(printed=True)
    assert [r.relation_id for r in rep.failures()] == ["X2X1^2"]


@pytest.mark.parametrize("alg", ALGS)
def test_sandwich_rules_are_derived(alg):
    assert derived_rule_checks(alg).ok


@pytest.mark.parametrize("alg", ALGS)
def test_symmetriser_commutation(alg):
    assert check_commutation(alg).ok


@pytest.mark.parametrize("alg", ALGS)
def test_skein_and_cubic(alg):
    assert check_spherical(alg).ok
    assert check_spherical(alg, hatted=True).ok


@pytest.mark.parametrize("alg", ALGS)
def test_typeset_hatted_relations_fail(alg):
    assert not check_spherical(alg, hatted=True, printed=True).ok


@pytest.mark.parametrize("alg", ALGS)
def test_zhedanov_images(alg):
    assert check_zhedanov_iso(alg).ok


def test_budget_exhaustion():
    lhs, rhs = printed_expansions()["X2X1X2"]
    v = verify_identity(lhs, rhs, rewrite_system("H_III_D7"), budget=1)
    assert v.exhausted and not v.ok
    with pytest.raises(BudgetExhausted):
        normalize(lhs - rhs, rewrite_system("H_III_D7"), budget=1)


def test_trace_records_rule_applications():
    t = Trace()
    normalize(T1 * T1, rewrite_system("H_III_D7"), trace=t)
    assert t.count >= 1 and len(t.steps) == t.count and not t.truncated
