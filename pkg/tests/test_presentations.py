import pytest

from cherednik.field import ONE, Q, sym
from cherednik.presentations import (
    CATALOGUE, NCExpression, apply_generator_map, catalogue_json, check_automorphism_beta, check_presentation,
    gamma_limit_map, gens, inv, ld_inverse_map, ld_map, matrices_equal, presentation, sahi_inverse_map, sahi_map,
)
from cherednik.qmat import ALGEBRAS, NoInverseAvailable, UnknownAlgebra, embed, eval_nc
from cherednik.qtorus import phase_convention

V0, V1, Vc0, Vc1 = gens("V0", "V1", "Vc0", "Vc1")
SUFFIX = {"H": "H", "H_V": "V", "H_IV": "IV", "H_III": "III"}


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_embedding_satisfies_defining_relations(alg):
    rep = check_presentation(presentation(alg), embed(alg))
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("alg,failing", [
    ("H", {"daha5"}), ("H_V", {"dahaV5", "dahaV6"}), ("H_IV", {"dahaIV5", "dahaIV6"}),
    ("H_III", {"dahaIII5", "dahaIII6"}), ("H_II", {"dahaII3", "dahaII4"}), ("H_I", {"dahaI3", "dahaI5"}),
])
def test_typeset_matrices_fail_exactly_the_product_relations(alg, failing):
    rep = check_presentation(presentation(alg), embed(alg, "printed"))
    assert {r.relation_id for r in rep.failures()} == failing


def test_product_relation_on_h():
    m = eval_nc(Vc1 * V1 * V0 * Vc0 - ONE / Q, embed("H"))
    assert m.is_zero()


def test_sign_flips_in_product_relation_are_detected():
    rel = dict(CATALOGUE["H"].relations)["daha5"]
    for word in rel.terms:
        flipped = NCExpression({w: (-c if w == word else c) for w, c in rel.terms.items()})
        assert not eval_nc(flipped, embed("H")).is_zero()


def test_phase_convention_is_load_bearing():
    with phase_convention(-1):
        assert not check_presentation(presentation("H"), embed("H")).ok


@pytest.mark.parametrize("alg", list(SUFFIX))
def test_sahi_presentations(alg):
    there = apply_generator_map(sahi_map(alg), embed(alg))
    assert check_presentation(presentation("sahi_" + SUFFIX[alg]), there).ok


@pytest.mark.parametrize("alg", ["H_V", "H_IV", "H_III"])
def test_ld_presentations(alg):
    there = apply_generator_map(ld_map(alg), embed(alg))
    assert check_presentation(presentation("LD_" + SUFFIX[alg]), there).ok


def _round_trips(alg, forward, backward):
    base = embed(alg)
    back = apply_generator_map(backward, apply_generator_map(forward, base))
    return all(matrices_equal(base.finalize(back.generators[g]), base.finalize(base.generators[g])) for g in base.generators)


@pytest.mark.parametrize("alg", ["H", "H_V", "H_III"])
def test_sahi_round_trip(alg):
    assert _round_trips(alg, sahi_map(alg), sahi_inverse_map(alg))


@pytest.mark.parametrize("alg", ["H_V", "H_IV", "H_III"])
def test_ld_round_trip(alg):
    assert _round_trips(alg, ld_map(alg), ld_inverse_map(alg))


def test_beta_is_an_automorphism():
    assert check_automorphism_beta(embed("H")).ok
    assert check_automorphism_beta(embed("H"), 2).ok


def test_gamma_limit_lands_in_h_v_gamma():
    assert check_presentation(presentation("H_V_gamma"), apply_generator_map(gamma_limit_map(), embed("H_V"))).ok


def test_missing_inverse_is_reported():
    with pytest.raises(NoInverseAvailable):
        eval_nc(inv("V0"), embed("H_V"))


def test_unknown_algebra():
    with pytest.raises(UnknownAlgebra):
        embed("H_VII")


def test_catalogue_serialises_every_relation():
    rows = catalogue_json()
    assert len(rows) == sum(len(p.relations) for p in CATALOGUE.values())
    assert all(r["expression"].endswith("= 0") for r in rows)


def test_expression_algebra():
    x = (V0 + 1) * (V0 - 1)
    assert x.terms == (V0 * V0 - 1).terms
    assert (V0 * sym("a") - V0 * sym("a")).is_zero()
    assert (V0 ** -1).symbols() == {"V0^-1"}
