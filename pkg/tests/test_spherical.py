import dataclasses

import pytest

from cherednik.spherical import (
    MATRIX_ALGEBRAS, build_triple, check_cubic, check_gamma_spherical, check_idempotent, check_skein,
    check_zhedanov_iso, cubic_spec, fit_omegas, gens,
)


@pytest.fixture(scope="module", params=MATRIX_ALGEBRAS)
def triple(request):
    return build_triple(request.param)


def test_symmetriser_is_idempotent_and_commutes(triple):
    assert check_idempotent(triple).ok


def test_skein_relations(triple):
    assert check_skein(triple).ok


def test_quantum_cubic(triple):
    assert check_cubic(triple).ok


def test_hatted_relations_with_printed_omega(triple):
    assert check_cubic(triple, hatted=True).ok


def test_omega_table_is_recovered_from_the_matrices(triple):
    spec = cubic_spec(triple.algebra_id)
    images = {f"Xh{i}": gens(f"Xh{i}")[0] for i in (1, 2, 3)}
    fitted = fit_omegas(triple, images, spec)
    assert fitted is not None
    for k in (1, 2, 3):
        assert fitted[k] == spec.omega[k]
    assert fitted[4] == spec.omega_sign * spec.omega[4]


def test_flipping_an_omega_entry_is_detected(triple):
    spec = cubic_spec(triple.algebra_id)
    for k, w in spec.omega.items():
        if w.is_zero():
            continue
        flipped = dataclasses.replace(spec, omega={**spec.omega, k: -w})
        assert not check_cubic(triple, flipped, hatted=True).ok, k


@pytest.mark.parametrize("alg", ["H_V", "H_IV", "H_III"])
def test_zhedanov_images(alg):
    assert check_zhedanov_iso(alg).ok


def test_gamma_preserves_hatted_relations():
    rep = check_gamma_spherical()
    assert rep.ok
    assert rep.notes and rep.notes[0].startswith("omega1 = ")
