from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covol.poly import (
    MultiPoly,
    default_names,
    denormalize,
    dumps,
    flip_signs,
    from_json_obj,
    loads,
    normalize,
    poly_from_string,
    reverse,
    subst_one_minus,
    to_json_obj,
    truncate,
)
from tests.strategies import polys

T = default_names(3)


def P(text, names=T):
    return poly_from_string(text, names)


def test_parse_and_print_round_trip():
    f = P("t1^2*t2 - 3*t3 + 1/2")
    assert f.coefficient((2, 1, 0)) == 1
    assert f.coefficient((0, 0, 1)) == -3
    assert f.coefficient((0, 0, 0)) == Fraction(1, 2)
    assert P(f.to_string(T)) == f


def test_zero_and_degree_conventions():
    z = MultiPoly.zero(2)
    assert not z
    assert z.degree() == -1
    assert str(z) == "0"
    assert MultiPoly.constant(2, 3).degree() == 0


def test_rejects_bad_exponents():
    with pytest.raises(ValueError):
        MultiPoly(2, {(1, -1): 1})
    with pytest.raises(ValueError):
        MultiPoly(2, {(1, 0, 0): 1})


def test_integer_coefficients_stay_int():
    f = P("2*t1") * P("1/2*t2")
    assert type(f.coefficient((1, 1, 0))) is int


def test_homogeneous_part_and_max_exponents():
    f = P("t1^3 + t1*t2 + t3")
    assert f.homogeneous_part(2) == P("t1*t2")
    assert f.max_exponents() == (3, 1, 1)
    assert not f.is_homogeneous()


def test_permute_and_substitute():
    f = P("t1^2*t2")
    assert f.permute_variables([1, 0, 2]) == P("t2^2*t1")
    g = f.substitute([P("t1 + t2"), P("t3"), P("t3")])
    assert g == P("(t1 + t2)^2*t3")


def test_derivative_and_evaluate():
    f = P("t1^3*t2^2")
    assert f.derivative((2, 1, 0)) == P("12*t1*t2")
    assert f.evaluate([2, 3, 0]) == 72


def test_reverse_and_truncate():
    f = P("t1^2 + t1*t2")
    assert reverse(f, (2, 1, 0)) == P("t2 + t1")
    with pytest.raises(ValueError):
        reverse(f, (1, 1, 0))
    assert truncate(f, (1, 1, 0)) == P("t1*t2")


def test_flip_and_one_minus():
    assert flip_signs(P("t1*t2 + t2^2"), [1]) == P("-t1*t2 + t2^2")
    assert subst_one_minus(P("t1*t2")) == P("(1 - t1)*(1 - t2)")


def test_json_round_trip_and_errors():
    f = P("1/3*t1^2 - t2*t3")
    obj = to_json_obj(f, T)
    g, names = from_json_obj(obj)
    assert g == f and names == T
    assert loads(dumps(f, T))[0] == f
    with pytest.raises(ValueError):
        from_json_obj({"vars": ["a"], "terms": [{"e": [1]}]})


def test_dumps_is_canonical():
    a = MultiPoly(2, {(1, 0): 1, (0, 1): 2})
    b = MultiPoly(2, {(0, 1): 2, (1, 0): 1})
    assert dumps(a) == dumps(b)


@given(polys(3))
def test_normalize_round_trip(f):
    assert denormalize(normalize(f)) == f
    assert normalize(denormalize(f)) == f


@given(polys(3), polys(3), polys(3))
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == MultiPoly.zero(3)


@given(polys(2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_evaluate_is_a_ring_map(f, point):
    g = f * f + f
    assert g.evaluate(point) == f.evaluate(point) ** 2 + f.evaluate(point)


@given(polys(3, max_exp=3))
def test_reverse_is_an_involution(f):
    m = (3, 3, 3)
    assert reverse(reverse(f, m), m) == f
