import pytest

from cherednik import classical as C
from cherednik.qmat import ALGEBRAS


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_classical_cubic_and_scalar_traces(alg):
    rep = C.check_classical_cubic(alg)
    assert rep.ok, rep.failures()


def test_fricke_cubic_in_shear_coordinates():
    assert C.check_fricke().ok


def test_classical_monodromy_product_is_identity():
    assert C.check_classical_monodromy().ok


def test_quantum_monodromy():
    assert C.check_quantum_monodromy().ok


def test_typeset_exponents_fail_quantum_monodromy():
    assert not C.check_quantum_monodromy(typeset_exponents=True).ok


def test_poisson_structure_is_log_canonical():
    rep, _ = C.check_poisson_structure()
    assert rep.ok


def test_quantum_shear_algebra():
    assert C.check_quantum_shear().ok
    assert not C.check_quantum_shear(typeset=True).ok


def test_final_identification_reproduces_h():
    assert C.check_final_identification().ok
    assert not C.check_final_identification("printed").ok


def test_poisson_bracket_is_antisymmetric():
    s1, s2 = C.e_s(1, 0, 0), C.e_s(0, 1, 0)
    assert (C.poisson_bracket(s1, s2) + C.poisson_bracket(s2, s1)).is_zero()
    assert not C.poisson_bracket(s1, s2).is_zero()
