from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corpus import NAMED, field
from oracles import newton_sums, poly_disc
from nfmodels.nf_core import (
    FieldElement,
    FieldInputError,
    build_field,
    discriminant,
    element_inverse,
    element_mul,
    parse_field,
    rank_of_span,
    trace,
)


def el(*c):
    return FieldElement(tuple(c))


def test_parse_sqrt2():
    K = field("sqrt2")
    assert K.degree == 2 and K.signature == (2, 0) and K.discriminant == 8


def test_parse_gauss():
    K = field("gauss")
    assert K.signature == (0, 1) and K.discriminant == -4


def test_half_basis_is_not_a_ring():
    with pytest.raises(FieldInputError, match="closed under multiplication"):
        parse_field({"defining_polynomial": [-2, 0, 1], "integral_basis": [["1", "0"], ["0", "1/2"]]})


@pytest.mark.parametrize("doc, msg", [
    ({"defining_polynomial": [-2, 0, 2], "assume_power_basis_maximal": True}, "monic"),
    ({"defining_polynomial": [1, 2, 1], "assume_power_basis_maximal": True}, "squarefree"),
    ({"defining_polynomial": [1, 1], "assume_power_basis_maximal": True}, "degree"),
    ({"defining_polynomial": [-2, 0, 1], "integral_basis": [["1", "0"], ["2", "0"]]}, "singular"),
    ({"defining_polynomial": [-2, 0, 1]}, "integral_basis"),
])
def test_rejections(doc, msg):
    with pytest.raises(FieldInputError, match=msg):
        parse_field(doc)


def test_ring_of_integers_of_sqrt5():
    # basis 1, (1+sqrt5)/2 over x^2 - 5
    K = parse_field({"defining_polynomial": [-5, 0, 1],
                     "integral_basis": [["1", "0"], ["1/2", "1/2"]]})
    assert K.discriminant == 5


def test_multiplication_examples():
    assert element_mul(el(0, 1), el(0, 1), field("sqrt2")).coords == (2, 0)
    assert element_mul(el(0, 1), el(0, 1), field("gauss")).coords == (-1, 0)
    assert element_mul(el(0, 0, 1), el(0, 1, 0), field("cubic23")).coords == (1, 1, 0)


def test_trace_examples():
    K = field("cubic23")
    assert trace(K.one(), K) == 3
    assert trace(el(0, 1, 0), K) == 0
    assert trace(el(0, 0, 1), K) == 2


def test_discriminant_examples():
    assert discriminant(field("sqrt2")) == ([[2, 0], [0, 4]], 8)
    assert discriminant(field("gauss")) == ([[2, 0], [0, -2]], -4)
    assert discriminant(field("cubic23")) == ([[3, 0, 2], [0, 2, 3], [2, 3, 2]], -23)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_discriminant_matches_polynomial_discriminant(name):
    K = field(name)
    assert K.discriminant == poly_disc(NAMED[name])
    assert (K.discriminant > 0) == (K.signature[1] % 2 == 0)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_power_traces_are_newton_sums(name):
    K = field(name)
    n = K.degree
    p = newton_sums(NAMED[name], n - 1)
    for k in range(n):
        assert trace(K.basis_element(k), K) == p[k]


def test_rank_of_span_examples():
    K2, K3 = field("sqrt2"), field("cubic23")
    assert rank_of_span([el(1, 0), el(0, 1)], K2) == 2
    assert rank_of_span([el(1, 0), el(1, 1), el(0, 1)], K2) == 2
    th = K3.theta()
    powers = [K3.one(), th, element_mul(th, th, K3)]
    powers.append(element_mul(powers[-1], th, K3))
    assert rank_of_span(powers, K3) == 3


def test_inverse():
    K = field("cubic23")
    a = el(2, -1, 3)
    assert element_mul(a, element_inverse(a, K), K) == K.one()


def test_json_round_trip():
    K = field("zeta5")
    K2 = parse_field(K.to_json())
    for attr in ("defining_polynomial", "integral_basis", "mul_table", "signature", "discriminant"):
        assert getattr(K2, attr) == getattr(K, attr)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

PROP_FIELDS = ["sqrt2", "gauss", "cubic23", "quintic", "zeta5"]
small = st.integers(-20, 20)


@st.composite
def field_and_elements(draw, count=3):
    K = field(draw(st.sampled_from(PROP_FIELDS)))
    elems = [FieldElement(tuple(draw(small) for _ in range(K.degree))) for _ in range(count)]
    return K, elems


@settings(max_examples=60, deadline=None)
@given(field_and_elements())
def test_mul_commutative_associative(data):
    K, (a, b, c) = data
    assert element_mul(a, b, K) == element_mul(b, a, K)
    assert element_mul(element_mul(a, b, K), c, K) == element_mul(a, element_mul(b, c, K), K)
    # distributive as well
    assert element_mul(a, b + c, K) == element_mul(a, b, K) + element_mul(a, c, K)


@settings(max_examples=60, deadline=None)
@given(field_and_elements(2), st.fractions(max_denominator=9), st.fractions(max_denominator=9))
def test_trace_linear(data, p, q):
    K, (a, b) = data
    assert trace(a.scale(p) + b.scale(q), K) == p * trace(a, K) + q * trace(b, K)


@st.composite
def unimodular(draw, n):
    """Product of random elementary integer matrices."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.integers(1, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-3, 3))
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
    return U


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PROP_FIELDS).flatmap(
    lambda name: st.tuples(st.just(name), unimodular(len(NAMED[name]) - 1))))
def test_discriminant_invariant_under_unimodular_change(data):
    name, U = data
    K = field(name)
    # first row stays e_1 so beta_1 = 1 is preserved
    K2 = build_field(NAMED[name], [[Fraction(x) for x in row] for row in U])
    assert K2.discriminant == K.discriminant
