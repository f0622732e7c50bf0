import pytest
from hypothesis import given, strategies as st

from cherednik.field import ONE, Q, q, sym
from cherednik.qtorus import (
    PoleAtQ1, TorusElement, U0_CENTRAL, classical_limit, commutator, is_central, omega, phase_convention,
)
from oracle import same, sp

E = TorusElement.exp
vec = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
coeff = st.sampled_from([ONE, -ONE, Q, sym("a"), 2 * ONE])
elements = st.lists(st.tuples(vec, coeff), min_size=1, max_size=3).map(
    lambda ts: sum((E(*m, coeff=c) for m, c in ts), TorusElement())
)


def test_generators_q_commute():
    # e^{S1} e^{S2} = q^{-1} e^{S2} e^{S1}
    assert E(1, 0, 0) * E(0, 1, 0) == E(0, 1, 0) * E(1, 0, 0) * (ONE / q)
    assert E(0, 1, 0) * E(0, 0, 1) == E(0, 0, 1) * E(0, 1, 0) * (ONE / q)
    assert E(0, 0, 1) * E(1, 0, 0) == E(1, 0, 0) * E(0, 0, 1) * (ONE / q)


def test_product_of_exponentials_is_symmetric_ordering():
    assert E(1, 0, 0) * E(0, 1, 0) == E(1, 1, 0, coeff=ONE / Q)


def test_sum_of_exponents_is_central():
    assert is_central(E(1, 1, 1))
    assert not is_central(E(1, 0, 0))
    for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        assert commutator(U0_CENTRAL, E(*m)).is_zero()


def test_phase_convention_flip_changes_products():
    with phase_convention(-1):
        flipped = E(1, 0, 0) * E(0, 1, 0)
    assert flipped != E(1, 0, 0) * E(0, 1, 0)


def test_classical_limit_commutes():
    x = E(1, 0, 0) * E(0, 1, 0) - E(0, 1, 0) * E(1, 0, 0)
    assert classical_limit(x).is_zero()
    assert same(classical_limit(E(1, 0, 0, coeff=Q)), sp.Symbol("s1h") ** 2)


def test_pole_at_q_equal_one():
    with pytest.raises(PoleAtQ1):
        classical_limit(TorusElement.scalar(ONE / (q - 1)))


@given(vec, vec)
def test_omega_is_antisymmetric(m, n):
    assert omega(m, n) == -omega(n, m)
    assert E(*m) * E(*n) == E(*n) * E(*m) * q ** (-omega(m, n))


@given(elements, elements, elements)
def test_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
