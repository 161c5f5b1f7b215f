import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from woundheights.gf import GF
from woundheights.polyfield import (
    Place,
    PoleError,
    Polynomial,
    RationalFunction,
    abs_value,
    content,
    count_irreducible,
    euler_product,
    factor_places,
    gcd,
    is_irreducible,
    local_zeta_factor,
    places_of_degree,
    places_up_to,
    primitive_part,
    valuation,
    zeta_closed,
    zeta_residue,
)

F2 = GF(2)
t = Polynomial.t(F2)


def P(F, *c):
    return Polynomial(F, c)


def test_gcd_examples():
    assert gcd(t**2 + t, t + 1) == t + 1
    assert (t + 1) ** 2 == t**2 + 1
    F3 = GF(3)
    f = P(F3, 1, 2)  # 2t + 1
    assert gcd(f, P(F3)) == f.monic()


def test_divmod_and_eval():
    q, r = divmod(t**3 + t + 1, t + 1)
    assert q * (t + 1) + r == t**3 + t + 1
    assert r.degree < 1
    assert (t**2 + t + 1)(1) == F2.one


def test_content_and_primitive_part():
    polys = [t**2 + t, t + 1]
    assert content(polys) == t + 1
    assert primitive_part(polys) == (t, P(F2, 1))


def test_zero_polynomial_degree():
    assert P(F2).degree == float("-inf")


def test_irreducibility_examples():
    assert is_irreducible(t**2 + t + 1)
    assert not is_irreducible(t**2 + 1)
    for a in range(3):
        assert is_irreducible(P(GF(3), a, 1))
    with pytest.raises(ValueError):
        is_irreducible(P(F2, 1))


def test_places_small():
    assert [repr(v) for v in places_up_to(F2, 1)] == ["inf", "(t)", "(t + 1)"]
    assert len(places_up_to(F2, 2)) == 4
    assert [v.poly for v in places_of_degree(F2, 2)] == [t**2 + t + 1]
    assert len(places_of_degree(F2, 3)) == 2


@pytest.mark.parametrize("F", [GF(2), GF(3), GF(2, 2), GF(5)])
def test_place_counts_match_necklace_formula(F):
    for d in range(1, 5 if F.q < 5 else 4):
        places = places_of_degree(F, d)
        assert len(places) == count_irreducible(F.q, d)
        # the sieve and the Rabin test agree
        assert all(is_irreducible(v.poly) for v in places)


def test_necklace_values():
    assert [count_irreducible(2, d) for d in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert [count_irreducible(3, d) for d in range(1, 5)] == [3, 3, 8, 18]


def test_valuations():
    v_t = Place(F2, (0, 1))
    assert valuation(v_t, t**3 + t**2) == 2
    inf = Place.infinity(F2)
    assert abs_value(inf, t**3 + 1) == 8
    f = t**2 + t
    prod = Fraction(1)
    for v in places_up_to(F2, 1):
        prod *= abs_value(v, f)
    assert prod == 1
    assert abs_value(Place(F2, (1, 1)), f) == Fraction(1, 2)
    with pytest.raises(ValueError):
        valuation(v_t, P(F2))


def test_place_validation_and_json():
    with pytest.raises(ValueError):
        Place.finite(t**2 + 1)
    v = Place.finite(t**2 + t + 1)
    assert v.q_v == 4
    assert v.to_json() == {"kind": "finite", "pi": [[1], [1], [1]]}
    assert Place.infinity(F2).to_json() == {"kind": "infinity"}


def test_zeta_closed_and_residue():
    assert zeta_closed(F2, 2) == pytest.approx(8 / 3)
    assert zeta_residue(GF(3)) == pytest.approx(3 / (2 * math.log(3)))
    with pytest.raises(PoleError):
        zeta_closed(F2, 1)
    with pytest.raises(PoleError):
        zeta_closed(F2, 0)


def test_truncated_zeta_product():
    r = euler_product(local_zeta_factor(2), F2, 10, include_infinity=True, delta=1, constant=2)
    assert abs(r.value - 8 / 3) < 1e-3
    assert abs(r.value - 8 / 3) <= r.tail_bound


def test_telescoping_product():
    r = euler_product(lambda v: 1 - Fraction(1, v.q_v**2), F2, 14, delta=1)
    assert abs(r.value - 0.5) < 1e-3
    assert abs(r.value - 0.5) <= r.tail_bound
    for p in (2, 3):
        F = GF(p)
        r = euler_product(lambda v: 1 - Fraction(1, v.q_v**p), F, 10, delta=p - 1, by_degree=True)
        assert abs(r.value - (1 - F.q ** (1 - p))) <= r.tail_bound


def test_constant_factor():
    r = euler_product(lambda v: 1, F2, 5)
    assert r.value == 1
    assert r.to_json()["value_re"] == 1.0
    assert r.to_json()["cutoff_degree"] == 5


def test_by_degree_matches_place_by_place():
    F = GF(3)
    f = lambda v: 1 - Fraction(1, v.q_v**3)  # noqa: E731
    a = euler_product(f, F, 6, delta=2)
    b = euler_product(f, F, 6, delta=2, by_degree=True)
    assert abs(a.value - b.value) < 1e-14


polys = st.builds(
    lambda F, cs: Polynomial(F, [c % F.q for c in cs]),
    st.sampled_from([GF(2), GF(3), GF(2, 2)]),
    st.lists(st.integers(0, 100), max_size=9),
)


@given(polys, st.lists(st.integers(0, 100), min_size=1, max_size=6))
def test_divmod_identity(f, gc):
    g = Polynomial(f.field, [c % f.field.q for c in gc])
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(polys, polys)
def test_gcd_divides(f, g):
    if f.field != g.field:
        return
    d = gcd(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert d.is_monic()
    assert (f % d).is_zero() and (g % d).is_zero()


@settings(max_examples=200)
@given(polys, polys)
def test_product_formula(f, g):
    if f.field != g.field or f.is_zero() or g.is_zero():
        return
    r = RationalFunction(f, g)
    prod = abs_value(Place.infinity(f.field), r)
    places = {v for v, _ in factor_places(r.num)} | {v for v, _ in factor_places(r.den)}
    for v in places:
        prod *= abs_value(v, r)
    assert prod == 1


@given(polys)
def test_factorization_reconstructs(f):
    if f.is_zero() or f.degree < 1:
        return
    out = Polynomial(f.field, (1,))
    for v, m in factor_places(f):
        out = out * v.poly**m
    assert out == f.monic()
