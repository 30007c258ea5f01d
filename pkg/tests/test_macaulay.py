import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covol.catalog import BUILTIN, expected_dual_generators, flag3_borel, grassmannian_2_4
from covol.certify import is_lorentzian
from covol.macaulay import (
    PresentationError,
    PresentedRing,
    annihilator,
    check_flat,
    check_poincare,
    contract,
    derive_degree_map,
    dual_generator,
    graded_basis,
    presentation_from_json,
    presentation_to_json,
    verify_inverse_pair,
    weighted_homogeneous_degree,
    weighted_monomials,
)
from covol.poly import MultiPoly, default_names, normalize, poly_from_string
from tests.strategies import polys


def X(text, n=2):
    return poly_from_string(text, default_names(n, "x"))


def Y(text, n=2):
    return poly_from_string(text, default_names(n, "y"))


def ring(degs, gens, d):
    return PresentedRing(tuple(degs), tuple(X(g, len(degs)) for g in gens), d)


def test_contraction_examples():
    assert contract(X("x1"), Y("y1^2*y2")) == Y("y1*y2")
    assert not contract(X("x2^2"), Y("y1"))
    assert contract(X("x1^2 + x2"), Y("y1^2*y2")) == Y("y2 + y1^2")
    with pytest.raises(ValueError):
        contract(X("x1", 3), Y("y1"))


small = polys(2, max_terms=4, max_exp=2, coeffs=st.integers(-3, 3))
targets = polys(2, max_terms=5, max_exp=5, coeffs=st.integers(-3, 3))


@given(small, small, targets)
def test_contraction_is_a_module_action(f, g, G):
    assert contract(f * g, G) == contract(f, contract(g, G))
    assert contract(f + g, G) == contract(f, G) + contract(g, G)
    assert contract(MultiPoly.constant(2), G) == G


def test_weighted_monomials():
    assert weighted_monomials((1, 2), 3) == ((3, 0), (1, 1))
    assert weighted_monomials((1, 1), 0) == ((0, 0),)
    assert len(weighted_monomials((1, 1, 1), 3)) == 10


def test_graded_basis_examples():
    gr = grassmannian_2_4().ring
    assert graded_basis(gr, 3).rank == 1
    assert graded_basis(gr, 4).rank == 1
    assert graded_basis(gr, 5).rank == 0
    fl = flag3_borel().ring
    assert [graded_basis(fl, nu).rank for nu in range(5)] == [1, 2, 2, 1, 0]
    assert graded_basis(fl, 0).torsion_free


def test_flat_and_torsion():
    for name, factory in BUILTIN.items():
        assert check_flat(factory().ring), name
    v = check_flat(ring([1], ["2*x1"], 1))
    assert not v and v.witness["kind"] == "torsion"


def test_degree_map_values():
    gr = grassmannian_2_4()
    rho = derive_degree_map(gr.ring, gr.positive_monomial)
    assert rho((0, 2)) == 1 and rho((4, 0)) == 2 and rho((2, 1)) == 1
    fl = flag3_borel()
    rho = derive_degree_map(fl.ring, fl.positive_monomial)
    assert rho((2, 1, 0)) == -1 and rho((2, 0, 1)) == 1
    assert rho((1, 0, 0)) == 0


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_truncated_polynomial_ring(d):
    r = ring([1], [f"x1^{d + 1}"], d)
    rho = derive_degree_map(r, (d,))
    assert dual_generator(r, rho) == poly_from_string(f"y1^{d}", ["y1"])
    assert check_poincare(r, rho)


def test_degree_map_errors():
    gr = grassmannian_2_4()
    with pytest.raises(PresentationError):
        derive_degree_map(gr.ring, (1, 1))
    # R_1 has rank 2 here, so there is no degree map
    r = ring([1, 1], ["x1^2", "x2^2", "x1*x2"], 1)
    with pytest.raises(PresentationError):
        derive_degree_map(r, (1, 0))


@pytest.mark.parametrize("name", sorted(expected_dual_generators()))
def test_known_dual_generators(name):
    pres, expected = expected_dual_generators()[name]
    rho = derive_degree_map(pres.ring, pres.positive_monomial)
    assert dual_generator(pres.ring, rho) == expected
    assert verify_inverse_pair(pres.ring, expected)
    assert check_poincare(pres.ring, rho)


def test_nef_flag_generator_is_lorentzian():
    pres, G = expected_dual_generators()["flag3_nef"]
    assert is_lorentzian(normalize(G))


def test_grassmannian_annihilator():
    gens = annihilator(Y("2*y1^4 + y1^2*y2 + y2^2"), (1, 2))
    assert len(gens) == 2
    assert sorted(weighted_homogeneous_degree(g, (1, 2)) for g in gens) == [3, 4]
    r = PresentedRing((1, 2), tuple(gens), 4)
    assert verify_inverse_pair(r, Y("2*y1^4 + y1^2*y2 + y2^2"))


def test_annihilator_of_monomial():
    gens = annihilator(Y("y1*y2"), (1, 1))
    assert {g.to_string(["x1", "x2"]) for g in gens} == {"x1^2", "x2^2"}


def test_annihilator_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        annihilator(Y("y1^2 + y2"), (1, 1))
    with pytest.raises(ValueError):
        annihilator(MultiPoly.zero(2), (1, 1))


inverse_polys = st.integers(1, 3).flatmap(
    lambda d: polys(2, max_terms=4, coeffs=st.integers(-3, 3), homogeneous_degree=d)
)


@given(inverse_polys)
def test_annihilator_round_trip(G):
    if not G:
        return
    d = G.degree()
    gens = annihilator(G, (1, 1))
    assert all(not contract(g, G) for g in gens)
    assert verify_inverse_pair(PresentedRing((1, 1), tuple(gens), d), G)


def test_verify_rejects_wrong_generator():
    gr = grassmannian_2_4()
    v = verify_inverse_pair(gr.ring, Y("y1^4"))
    assert not v
    assert v.witness == {"kind": "slice", "degree": 2, "side": "annihilator_only", "vector": [0, 1], "element": "x2"}
    v = verify_inverse_pair(gr.ring, Y("y1^3"))
    assert not v and v.witness["kind"] == "shape"


def test_verify_truncated_ring():
    r = ring([1], ["x1^3"], 2)
    assert verify_inverse_pair(r, poly_from_string("y1^2", ["y1"]))
    assert not verify_inverse_pair(r, poly_from_string("y1^3", ["y1"]))


def test_poincare_failure():
    r = ring([1, 1], ["x1^2", "x1*x2", "x2^3"], 2)
    rho = derive_degree_map(r, (0, 2))
    v = check_poincare(r, rho)
    assert not v and v.witness["i"] == 1 and v.witness["kind"] == "pairing"
    assert v.witness["determinant"] == 0


def test_poincare_is_sign_covariant():
    for factory in BUILTIN.values():
        pres = factory()
        rho = derive_degree_map(pres.ring, pres.positive_monomial)
        assert bool(check_poincare(pres.ring, rho)) == bool(check_poincare(pres.ring, rho.negate()))


def test_presentation_json_round_trip():
    pres = grassmannian_2_4()
    obj = json.loads(json.dumps(presentation_to_json(pres)))
    back = presentation_from_json(obj)
    assert back.ring == pres.ring and back.positive_monomial == pres.positive_monomial
    loose = presentation_from_json(
        {"var_degrees": [1, 2], "gens": ["x1^3 - 2*x1*x2", "x1^2*x2 - x2^2"], "socle_degree": 4, "positive_monomial": [0, 2]}
    )
    assert loose.ring == pres.ring
    with pytest.raises(PresentationError):
        presentation_from_json({"var_degrees": [1]})
