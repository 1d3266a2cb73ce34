import pytest
from hypothesis import given, settings, strategies as st
from sympy import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from com.mhire.qlines.services.gf.gf import (
    DivisionByZero,
    FieldMismatch,
    NoEmbedding,
    NotPrime,
    common_field,
    get_field,
    minimal_field,
)

FIELDS = [(7, 1), (3, 2), (2, 3), (5, 3)]


def elements_of(p, k):
    field = get_field(p, k)
    return st.lists(st.integers(0, p - 1), min_size=k, max_size=k).map(field)


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_has_order_elements(p, k):
    field = get_field(p, k)
    assert len(set(field.elements())) == p ** k
    assert field.order == p ** k


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    @settings(max_examples=60, deadline=None)
    @given(elements_of(p, k), elements_of(p, k), elements_of(p, k))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b - b == a
        if not a.is_zero:
            assert a * a.inverse() == a.field.one
            assert (a * b) / a == b

    check()


@pytest.mark.parametrize("p,k", FIELDS)
def test_frobenius_generates_galois_group(p, k):
    field = get_field(p, k)
    for a in field.elements():
        assert a ** field.order == a
        assert a.frobenius(k) == a
        assert a.frobenius() == a ** p


def test_get_field_is_cached():
    assert get_field(5, 2) is get_field(5, 2)


def test_non_prime_characteristic_rejected():
    with pytest.raises(NotPrime):
        get_field(9)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        get_field(11).zero.inverse()


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatch):
        get_field(3)(1) + get_field(3, 2)(1)


def test_integer_coercion():
    f = get_field(13)
    assert f(-1) == 12
    assert int(f(27)) == 1
    assert repr(f(5)) == "5"
    with pytest.raises(ValueError):
        int(get_field(3, 2).gen)


@settings(max_examples=50, deadline=None)
@given(elements_of(3, 2), elements_of(3, 2))
def test_embedding_is_a_ring_homomorphism(a, b):
    big = get_field(3, 4)
    assert big.embed(a * b) == big.embed(a) * big.embed(b)
    assert big.embed(a + b) == big.embed(a) + big.embed(b)
    assert big.restrict(big.embed(a), a.field) == a


def test_embeddings_compose():
    small, mid, big = get_field(2, 2), get_field(2, 4), get_field(2, 8)
    for a in small.elements():
        assert big.embed(mid.embed(a)) == big.embed(a)


def test_no_embedding_between_incompatible_degrees():
    with pytest.raises(NoEmbedding):
        get_field(3, 3).embed(get_field(3, 2).gen)
    with pytest.raises(NoEmbedding):
        get_field(3, 2).restrict(get_field(3, 2).gen, get_field(3))


def test_element_degree_and_minimal_field():
    big = get_field(3, 4)
    g2 = big.embed(get_field(3, 2).gen)
    assert g2.degree == 2
    assert big(2).degree == 1
    assert big.gen.degree == 4
    assert minimal_field([big(1), g2]) is get_field(3, 2)
    assert common_field(get_field(3, 2), get_field(3, 3)) is get_field(3, 6)


def test_smallest_modulus_is_kept():
    # x^2 + x + 1 is the first irreducible quadratic over GF(5)
    assert get_field(5, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("p,k", [(101, 6), (9973, 3), (101, 12)])
def test_large_extension_moduli(p, k):
    field = get_field(p, k)
    assert field.modulus[0] != 0
    assert field.modulus[-1] == 1
    assert gf_irreducible_p(list(reversed(field.modulus)), p, ZZ)
    assert field.gen.frobenius(k) == field.gen
    assert field.gen.frobenius(1) != field.gen
