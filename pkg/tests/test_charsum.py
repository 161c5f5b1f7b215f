import cmath

import pytest
from hypothesis import given, strategies as st

from woundheights.charsum import (
    LaurentTruncation,
    lemma_table,
    lemma_value,
    phi_character,
    residue_field,
    unit_character_sum,
)
from woundheights.gf import GF
from woundheights.polyfield import Place


def test_phi_examples():
    assert phi_character(LaurentTruncation(GF(2), 0, (1, 1))) == 1
    assert phi_character(LaurentTruncation(GF(2), 1, (1, 0))) == pytest.approx(-1)
    F4 = GF(2, 2)
    omega = F4.gen.code
    assert phi_character(LaurentTruncation(F4, 1, (omega, 0))) == pytest.approx(-1)
    assert phi_character(LaurentTruncation(F4, 1, (1, 0))) == pytest.approx(1)  # Tr(1) = 0 in F_4


def test_lemma_examples():
    u2 = LaurentTruncation(GF(2), 0, (1,))
    assert unit_character_sum(u2, 1, 0).value == pytest.approx(0.5)
    u3 = LaurentTruncation(GF(3), 0, (2, 1))
    r = unit_character_sum(u3, 1, 1)
    assert r.value == pytest.approx(-1 / 3, abs=1e-12)
    assert r.stabilized and r.lemma_applies
    assert unit_character_sum(u3, 1, 2).value == pytest.approx(0, abs=1e-12)
    assert unit_character_sum(u3, 1, 3).lemma_applies is False


def test_full_table():
    rows = lemma_table()
    assert len(rows) == 45
    for q_v, n, d, res, want in rows:
        assert abs(res.value - want) <= 1e-10, (q_v, n, d)
        assert res.stabilized


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_split_matches_bruteforce(q):
    F = GF(2, 2) if q == 4 else GF(q)
    for coeffs in ((1,), (q - 1, 1, 1)):
        u = LaurentTruncation(F, 0, coeffs)
        for n in (1, 2):
            for d in range(0, 4):
                if q ** (n * d + 2) > 50_000:
                    continue
                a = unit_character_sum(u, n, d, method="bruteforce").value
                b = unit_character_sum(u, n, d, method="split").value
                assert abs(a - b) < 1e-12


def test_stabilizes_beyond_nd():
    u = LaurentTruncation(GF(3), 0, (1, 2))
    vals = [unit_character_sum(u, 1, 2, e=e).value for e in (3, 4, 5)]
    assert max(abs(v - vals[0]) for v in vals) < 1e-12


def test_bad_inputs():
    with pytest.raises(ValueError):
        unit_character_sum(LaurentTruncation(GF(3), 0, (0, 1)), 1, 1)
    with pytest.raises(ValueError):
        unit_character_sum(LaurentTruncation(GF(3), 0, (1,)), 0, 1)
    with pytest.raises(IndexError):
        LaurentTruncation(GF(3), 0, (1,)).coeff(-1)


def test_residue_field_of_place():
    F = residue_field(Place(GF(2), (1, 1, 1)))
    assert F.q == 4


def test_json():
    r = unit_character_sum(LaurentTruncation(GF(2), 0, (1,)), 1, 1)
    assert set(r.to_json()) >= {"value_re", "value_im", "e", "stabilized"}


def test_lemma_value():
    assert lemma_value(4, 2, 0) == 0.75
    assert lemma_value(5, 1, 1) == -0.2
    assert lemma_value(5, 2, 1) == 0


laurent = st.builds(
    lambda N, cs: LaurentTruncation(GF(2, 2), N, tuple(c % 4 for c in cs)),
    st.integers(0, 3),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
)


@given(laurent, laurent)
def test_phi_additive_and_unimodular(x, y):
    assert abs(phi_character(x)) == pytest.approx(1)
    x = LaurentTruncation(x.field, 2, x.coeffs)
    y = LaurentTruncation(y.field, 2, y.coeffs)
    assert cmath.isclose(phi_character(x + y), phi_character(x) * phi_character(y), abs_tol=1e-12)


def test_series_product_window():
    F = GF(3)
    x = LaurentTruncation(F, 1, (1, 2, 0))  # pi^-1 + 2
    y = LaurentTruncation(F, 0, (1, 1))  # 1 + pi
    z = x * y
    assert z.N == 1 and z.coeff(-1) == 1 and z.coeff(0) == 0
    assert x.shift(1).N == 0 and x.shift(1).coeffs == x.coeffs
