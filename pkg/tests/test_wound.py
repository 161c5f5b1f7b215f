import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from woundheights.counting import enumerate_points
from woundheights.gf import GF
from woundheights.polyfield import Place, Polynomial, pdivmod, pgcd_many, places_of_degree, polys_up_to_degree
from woundheights.wound import (
    GroupPoint,
    group_inv,
    group_mul,
    height,
    local_metric,
    make_point,
    norm_form,
    norm_tuple,
)

F2, F3 = GF(2), GF(3)


def P(F, *c):
    return Polynomial(F, c)


t2 = Polynomial.t(F2)
one2, zero2 = P(F2, 1), P(F2)
t3 = Polynomial.t(F3)
one3, zero3 = P(F3, 1), P(F3)


def test_make_point_removes_content_and_scalar():
    x = make_point((t2**2 + t2, t2 + 1))
    assert x.polys() == (t2, one2)
    y = make_point((P(F3, 2), zero3, zero3))
    assert y == GroupPoint.identity(F3)
    with pytest.raises(ValueError):
        make_point((zero2, zero2))
    with pytest.raises(ValueError):
        GroupPoint(F2, [(0, 1), (0, 1)])  # t, t are not coprime


def test_norm_form_examples():
    assert norm_form(GroupPoint.identity(F2)) == one2
    assert norm_form((one2, one2)) == 1 + t2
    assert norm_form((zero3, one3, zero3)) == t3


def test_group_law_examples():
    u = make_point((zero2, one2))
    assert group_mul(u, u) == GroupPoint.identity(F2)
    u3 = make_point((zero3, one3, zero3))
    assert group_mul(u3, u3).polys() == (zero3, zero3, one3)
    e = GroupPoint.identity(F3)
    assert group_mul(e, u3) == u3


def test_metric_examples():
    x = make_point((one2, one2))
    assert local_metric(Place(F2, (1, 1)), x).m == 1
    assert local_metric(Place(F2, (0, 1)), x).m == 0
    e = GroupPoint.identity(F2)
    for v in (Place(F2, (0, 1)), Place(F2, (1, 1, 1))):
        assert local_metric(v, e).m == 0
    assert local_metric(Place.infinity(F2), x).m == 0


def test_height_examples():
    assert height(GroupPoint.identity(F2)) == 0
    for coords in ((zero2, one2), (one2, one2)):
        x = make_point(coords)
        assert height(x) == 1
        assert height(x, "A") == 1


def test_json_roundtrip():
    x = make_point((t3 + 2, t3**2, one3))
    data = x.to_json()
    assert data[1] == [[0], [0], [1]]
    assert GroupPoint.from_json(F3, data) == x


def _points(F, M_max):
    return [x for M in range(M_max + 1) for x in enumerate_points(F, M)]


def test_p_torsion_exhaustive_p2():
    e = GroupPoint.identity(F2)
    for x in _points(F2, 5):
        assert x**2 == e
        assert group_mul(x, group_inv(x)) == e


def test_p_torsion_sampled_p3():
    rng = random.Random(3)
    e = GroupPoint.identity(F3)
    for x in rng.sample(_points(F3, 5), 200):
        assert x**3 == e
        assert group_mul(x, group_inv(x)) == e


def test_routes_agree_on_enumerated_points():
    for F, M_max in ((F2, 10), (F3, 6)):
        for x in _points(F, M_max):
            assert height(x, "A") == height(x, "B") == len(x.norm) - 1


def test_metric_exponent_below_p():
    for F, M_max in ((F2, 8), (F3, 5)):
        places = [v for d in (1, 2) for v in places_of_degree(F, d)]
        for x in _points(F, M_max):
            for v in places:
                assert 0 <= local_metric(v, x).m <= F.p - 1


@pytest.mark.parametrize("F", [F2, F3])
def test_boundary_has_no_rational_points(F):
    # every primitive tuple with coordinates of degree <= 4 has f != 0
    deg = 4 if F.q == 2 else 2
    polys = list(polys_up_to_degree(F, deg))
    for coords in itertools.product(polys, repeat=F.p):
        if not any(coords) or pgcd_many(F, coords) != (1,):
            continue
        assert norm_tuple(F, coords)


def _is_pth_power_times_constant(F, f):
    # in characteristic p, g^p has nonzero coefficients only at multiples of p
    return all(c == 0 for i, c in enumerate(f) if i % F.p)


@st.composite
def points(draw, F):
    pts = _POINTS[F.p]
    return pts[draw(st.integers(0, len(pts) - 1))]


_POINTS = {2: _points(F2, 7), 3: _points(F3, 5)}


@settings(max_examples=300)
@given(st.data())
def test_group_axioms(data):
    F = data.draw(st.sampled_from([F2, F3]))
    a, b, c = (data.draw(points(F)) for _ in range(3))
    assert group_mul(a, b) == group_mul(b, a)
    assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))
    assert group_mul(a, group_inv(a)) == GroupPoint.identity(F)


@settings(max_examples=200)
@given(st.data())
def test_norm_quasi_multiplicative(data):
    F = data.draw(st.sampled_from([F2, F3]))
    a, b = data.draw(points(F)), data.draw(points(F))
    ab = group_mul(a, b)
    lhs = (norm_form(a) * norm_form(b)).c
    quo, rem = pdivmod(F, lhs, ab.norm)
    assert not rem
    assert _is_pth_power_times_constant(F, quo)
