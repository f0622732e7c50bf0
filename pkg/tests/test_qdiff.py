import pytest
from hypothesis import given, strategies as st

from cherednik.field import ONE, q, sym
from cherednik.presentations import CATALOGUE
from cherednik.qdiff import (
    PRINTED_DIFFERS, REPRESENTATIONS, X, NonPolynomialResult, QShiftOperator, UnknownRepresentation, Verdict,
    XLaurent, apply, basic_representation, catalogue, check_parameter_tables, check_representation, compose,
    operator_equal, preserves_space,
)
from oracle import same, x as sx, qs

a = sym("a")
FAST = [r for r in REPRESENTATIONS if r not in ("AW", "Z_V")]  # AW and Z_V run in the acceptance suite

laurent = st.dictionaries(st.integers(-3, 3), st.sampled_from([ONE, -ONE, a, q]), max_size=3).map(
    XLaurent.from_coefficients
)
simple_ops = st.lists(
    st.tuples(st.integers(-2, 2), st.sampled_from([1, -1]), st.sampled_from([ONE, a, X, ONE / (1 - X)])),
    min_size=1, max_size=3,
).map(lambda ts: QShiftOperator({(k, s): c for k, s, c in ts}))


def test_shift_and_inversion():
    f = XLaurent.monomial(3)
    assert apply(QShiftOperator.shift(1), f) == XLaurent.monomial(3, q ** 3)
    assert apply(QShiftOperator.inversion(), f) == XLaurent.monomial(-3)


def test_composition_rule():
    # (c(x) f(q x)) after (f(1/x)) is c(x) f(1/(q x))
    A = QShiftOperator({(1, 1): X})
    B = QShiftOperator.inversion()
    assert (A * B).terms == {(-1, -1): X}


@given(simple_ops, st.sampled_from([QShiftOperator.shift(1), QShiftOperator.inversion(), QShiftOperator.multiplication(X)]), laurent)
def test_composition_is_application_in_sequence(A, B, f):
    try:
        lhs = apply(compose(A, B), f)
    except NonPolynomialResult:
        return
    assert lhs == apply(A, apply(B, f))


def test_laurent_rejects_x_in_denominator():
    with pytest.raises(NonPolynomialResult):
        XLaurent(ONE / (1 - X))


def test_symmetric_basis():
    assert XLaurent.symmetric(2).is_symmetric()
    assert not XLaurent.monomial(1).is_symmetric()
    assert XLaurent.symmetric(2).degree_range() == (-2, 2)


def test_hecke_relations_of_the_basic_representation():
    ops = basic_representation()
    T1, T0 = ops["T1"], ops["T0"]
    ab, cd = a * sym("b"), sym("c") * sym("d")
    zero = QShiftOperator()
    assert operator_equal((T1 + ab) * (T1 + 1), zero, space="laurent").holds
    assert operator_equal((T0 + cd / q) * (T0 + 1), zero, space="laurent").holds


def test_basic_operators_preserve_laurent_polynomials():
    for op in basic_representation().values():
        assert preserves_space(op, "laurent", 8)
    assert not preserves_space(basic_representation("printed")["T0"], "laurent", 8)
    T0 = basic_representation()["T0"]
    assert apply(T0, XLaurent.monomial(0)) == XLaurent.monomial(0, -sym("c") * sym("d") / q)


@pytest.mark.parametrize("variant", ["corrected", "printed"])
def test_basic_representation_satisfies_sahi_relations(variant):
    ops = basic_representation(variant)
    xinv = QShiftOperator.multiplication(ONE / X)
    env = {**ops, "W": xinv, "X^-1": xinv}
    for rid, rel in CATALOGUE["sahi_H"].relations:
        total = QShiftOperator()
        for word, coeff in rel.terms.items():
            op = QShiftOperator.multiplication(coeff)
            for s in word:
                op = op * env[s]
            total = total + op
        assert operator_equal(total, QShiftOperator(), 8, "laurent").verdict is Verdict.EQUAL_CANONICAL, rid


def test_little_q_laguerre_a0_example():
    # K0 x = (x + q - 1)/q; the eigenvalue 1/q belongs to 1 - x, not to x
    K0 = catalogue("Z_I").K0
    assert same(apply(K0, XLaurent.monomial(1)).rf, (sx + qs - 1) / qs)
    assert apply(K0, XLaurent(1 - X)) == XLaurent(1 - X) * (ONE / q)


@pytest.mark.parametrize("rep_id", FAST)
def test_zhedanov_relations_and_casimirs(rep_id):
    records = check_representation(rep_id)
    bad = [r.relation_id for r in records if r.equality.verdict is not Verdict.EQUAL_CANONICAL]
    assert not bad
    assert {"zhe2", "zhe3", "casimir-K0", "casimir-K1"} <= {r.relation_id for r in records}


@pytest.mark.parametrize("rep_id", [r for r in PRINTED_DIFFERS if r != "Z_V"])
def test_typeset_operators_fail(rep_id):
    records = check_representation(rep_id, variant="printed")
    assert any(not r.equality.holds for r in records)


def test_perturbed_operator_fails():
    rep = catalogue("Z_II")
    bumped = type(rep)(rep.rep_id, rep.space, rep.K0 + QShiftOperator.multiplication(X), rep.K1, rep.params,
                       rep.beta_constant, rep.variant)
    records = check_representation(bumped)
    assert any(not r.equality.holds for r in records)
    assert all(r.equality.residual for r in records if not r.equality.holds)


def test_parameter_tables_agree():
    assert all(check_parameter_tables().values())


def test_unknown_representation():
    with pytest.raises(UnknownRepresentation):
        catalogue("Z_VII")
