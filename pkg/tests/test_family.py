import json
from dataclasses import replace
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from normforge.family import (
    GluedManifold,
    KnotDatum,
    ModelError,
    load_link,
    extend_fibration,
    glue,
    glued_alexander,
    glued_thurston,
    gluing_polynomial,
    lattice_shells,
    link_thurston_model,
    mcmullen_sweep,
    validate_knot,
    validate_link,
    verify_theorem,
)
from normforge.laurent import LaurentPoly, embed_univariate, multiply
from normforge.norms import NormBound, alexander_norm, thurston_eval, unit_ball
from normforge.polytope import Cone

from conftest import DATA, KNOT_BY_GENUS, knot

_MODEL24 = glue(load_link(DATA / "dunfield.json"), knot("k2_5"), knot("k2_9"))
TORUS = {"k2_3": (2, 3), "k2_5": (2, 5), "k2_7": (2, 7), "k2_9": (2, 9), "k3_4": (3, 4)}


def torus_alexander(p, q):
    t = sympy.Symbol("t")
    quotient = sympy.cancel((t ** (p * q) - 1) * (t - 1) / ((t**p - 1) * (t**q - 1)))
    poly = sympy.Poly(quotient, t)
    g = (p - 1) * (q - 1) // 2
    return g, {m[0] - g: int(c) for m, c in poly.terms()}


@pytest.mark.parametrize("name", sorted(TORUS))
def test_torus_fixtures_match_sympy(name):
    g, coeffs = torus_alexander(*TORUS[name])
    K = knot(name)
    assert K.genus == g
    assert {e: c for (e,), c in K.alexander.items()} == coeffs
    assert validate_knot(K)


def test_figure_eight_fixture():
    K = knot("k4_1")
    assert K.genus == 1 and validate_knot(K)
    assert K.alexander == LaurentPoly.univariate({1: -1, 0: 3, -1: -1})


def test_validate_knot_examples():
    g2 = KnotDatum(2, LaurentPoly.univariate({2: 1, 1: -1, 0: 1, -1: -1, -2: 1}))
    assert validate_knot(g2)
    bad = validate_knot(KnotDatum(1, LaurentPoly.constant(1)))
    assert not bad and any("2*genus" in f for f in bad.failures)
    g4 = KnotDatum(4, LaurentPoly.univariate({k: (-1) ** k for k in range(-4, 5)}))
    assert validate_knot(g4)


def test_validate_knot_catches_each_invariant():
    asym = KnotDatum(1, LaurentPoly.univariate({1: 1, 0: -1, -1: 2}))
    assert any("symmetric" in f for f in validate_knot(asym).failures)
    not_monic = KnotDatum(1, LaurentPoly.univariate({1: 2, 0: -3, -1: 2}))
    assert any("monic" in f for f in validate_knot(not_monic).failures)
    assert validate_knot(replace(not_monic, fibered=False))


def test_validate_link(dunfield):
    assert validate_link(dunfield)
    lk1 = replace(dunfield, alexander=LaurentPoly.constant(1, 2))
    assert not validate_link(lk1)
    wrong_face = replace(dunfield, face_vertex=(1, 0))
    assert not validate_link(wrong_face)
    outside = replace(dunfield, fibered_cone=Cone([(1, 1), (1, -2)]))
    assert not validate_link(outside)


def test_link_thurston_model(dunfield):
    T = link_thurston_model(dunfield)
    assert thurston_eval(T, dunfield.alexander, (2, -1)) == NormBound.exactly(3)
    assert thurston_eval(T, dunfield.alexander, (5, -1)).lower_strict


def test_glue_g24(model24):
    K1, K2 = model24.knots
    product = multiply(embed_univariate(K1.alexander, 0, 2), embed_univariate(K2.alexander, 1, 2))
    assert model24.alexander == product
    assert model24.canonical == (4, -8)
    assert len(model24.abasic) == 45


def test_glue_same_knot_twice(dunfield):
    M = glue(dunfield, knot("k2_5"), knot("k2_5"))
    assert M.genera == (2, 2) and M.canonical == (4, -4)


def test_glue_rejects_bad_knot(dunfield):
    bad = KnotDatum(1, LaurentPoly.constant(1))
    with pytest.raises(ModelError, match="2\\*genus"):
        glue(dunfield, bad, knot("k2_3"))


def test_gluing_formula_divides(dunfield):
    K = knot("k2_3")
    assert gluing_polynomial(dunfield, K, K) == multiply(
        embed_univariate(K.alexander, 0, 2), embed_univariate(K.alexander, 1, 2)
    )


def test_glued_norm_examples(model24):
    assert glued_thurston(model24, (2, -1)) == NormBound.exactly(16)
    assert glued_thurston(model24, (0, 0)) == NormBound.exactly(0)
    assert glued_thurston(model24, (5, -1)) == NormBound.at_least(28, strict=True)
    assert glued_alexander(model24, (1, 1)) == 12
    assert glued_alexander(model24, (0, 0)) == 0
    assert glued_alexander(model24, (5, -1)) == 28


def test_extend_fibration(model24):
    cert = extend_fibration(model24, (2, -1))
    assert cert.passed and cert.values["alexander"] == 16
    cert = extend_fibration(model24, (1, -1))
    assert cert.passed and cert.values["alexander"] == 12
    with pytest.raises(ModelError):
        extend_fibration(model24, (5, -1))


def test_verify_theorem_g24(model24):
    cert = verify_theorem(model24)
    assert cert.passed and cert.verdict == "strictly_contained"
    assert cert.values["alexander_face"] == [[0, "-1/8"], ["1/4", 0]]
    assert cert.values["fibered_face"] == [["1/20", "-1/10"], ["1/8", "-1/16"]]
    phi = tuple(cert.values["witness"]["phi"])
    assert not model24.fibered_cone.contains(phi)
    assert glued_thurston(model24, phi).lower_strict
    assert cert.recheck()


def test_five_minus_one_is_a_valid_witness(model24):
    bound = glued_thurston(model24, (5, -1))
    assert bound.lower_strict and bound.lower == alexander_norm(model24.alexander, (5, -1))
    assert not model24.fibered_cone.contains((5, -1))


def test_verify_theorem_g11(model11):
    cert = verify_theorem(model11)
    assert cert.verdict == "strictly_contained"
    for m1, m2 in [(1, 0), (2, -3), (-4, 4)]:
        assert glued_alexander(model11, (m1, m2)) == 2 * abs(m1) + 2 * abs(m2)


def test_fibered_cone_equal_to_face_cone_is_not_strict(dunfield):
    whole = replace(dunfield, fibered_cone=Cone([(1, 0), (0, -1)]), strict_outside=False)
    M = glue(whole, knot("k2_5"), knot("k2_9"))
    cert = verify_theorem(M)
    assert cert.verdict == "equal" and not cert.passed


def test_tampered_canonical(model24):
    bad = replace(model24, canonical=(4, -6))
    cert = verify_theorem(bad)
    assert cert.verdict == "canonical_not_maximal" and not cert.passed
    assert cert.values["witness"]["cls"] == [4, -8]


def test_tampered_polynomial_and_classes(model24):
    wrong = replace(model24, alexander=model24.alexander + LaurentPoly.constant(1, 2))
    assert verify_theorem(wrong).verdict == "alexander_mismatch"
    fewer = replace(model24, abasic=type(model24.abasic)(2, list(model24.abasic)[1:]))
    assert verify_theorem(fewer).verdict == "abasic_mismatch"


def test_model_json_roundtrip(model24):
    data = json.loads(json.dumps(model24.to_json()))
    assert GluedManifold.from_json(data) == model24


def test_mcmullen_sweep_small(model24):
    cert, rows = mcmullen_sweep(model24, 3)
    assert cert.passed and len(rows) == 49


def test_lattice_shells():
    shells = list(lattice_shells(2))
    assert shells[:4] == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(shells) == 12


@pytest.mark.parametrize("g1,g2", [(1, 2), (2, 4), (3, 3), (4, 1)])
def test_alexander_ball_is_scaled_diamond(dunfield, g1, g2):
    M = glue(dunfield, knot(KNOT_BY_GENUS[g1]), knot(KNOT_BY_GENUS[g2]))
    a, b = F(1, 2 * g1), F(1, 2 * g2)
    assert set(unit_ball(M.abasic).vertices) == {(a, 0), (-a, 0), (0, b), (0, -b)}


coords = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


@given(coords)
def test_glued_alexander_matches_polynomial(phi):
    M = _MODEL24
    assert glued_alexander(M, phi) == alexander_norm(M.alexander, phi)


@given(coords)
def test_fibered_cone_values(phi):
    M = _MODEL24
    if not M.fibered_cone.contains(phi):
        return
    m1, m2 = map(abs, phi)
    assert glued_thurston(M, phi).value == (m1 + m2) + 3 * m1 + 7 * m2 == 4 * m1 + 8 * m2

