import pickle

import pytest
from hypothesis import given, strategies as st

from woundheights.gf import GF, FieldElement, field_create, field_for, frobenius, least_irreducible

FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(2, 3), GF(3, 2)]


def test_moduli_are_least_irreducibles():
    assert GF(2, 3).modulus == (1, 1, 0, 1)  # t^3 + t + 1
    assert GF(3, 2).modulus == (1, 0, 1)  # t^2 + 1
    assert GF(2, 2).modulus == (1, 1, 1)
    assert GF(2).modulus is None
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)


def test_prime_field_f2():
    F = field_create(2, 1)
    assert F.q == 2
    assert [x.code for x in F.elements()] == [0, 1]
    assert F.one + F.one == F.zero


def test_f4_omega():
    F = GF(2, 2)
    w = F.gen
    assert w * (w + 1) == F.one
    assert w * w == w + 1
    assert frobenius(w) == w + 1
    assert frobenius(w).coords == (1, 1)
    assert w.trace() == 1


def test_errors():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2, 0)
    with pytest.raises(ZeroDivisionError):
        GF(3).zero.inv()
    with pytest.raises(ValueError):
        GF(2, 2).one + GF(2).one
    with pytest.raises(ValueError):
        field_for(2, 6)
    assert field_for(3, 9) is GF(3, 2)


def test_pickle_roundtrip_keeps_identity():
    F = GF(3, 2)
    assert pickle.loads(pickle.dumps(F)) is F


def test_serialization_is_coordinates():
    F = GF(3, 2)
    x = F([2, 1])
    assert x.to_json() == [2, 1]
    assert F.to_json() == {"p": 3, "e": 2, "modulus": [1, 0, 1]}


def test_large_field_without_tables():
    F = GF(3, 8)
    x = F.element(1234)
    assert x * x.inv() == F.one
    assert x ** F.q == x


def test_trace_lands_in_prime_field():
    for F in FIELDS:
        for x in F.elements():
            assert 0 <= x.trace() < F.p


@st.composite
def field_and_elements(draw, n=3):
    F = draw(st.sampled_from(FIELDS))
    return F, [FieldElement(F, draw(st.integers(0, F.q - 1))) for _ in range(n)]


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if a:
        assert a * a.inv() == F.one
        assert (b / a) * a == b


@given(field_and_elements())
def test_frobenius_is_additive_and_multiplicative(data):
    F, (a, b, _) = data
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert a ** F.q == a
