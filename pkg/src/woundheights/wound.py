"""Points of G = (F^{1/p})^x / F^x for F = F_q(t), p = char F.

A point is the class of alpha = x_0 + x_1 u + ... + x_{p-1} u^{p-1} with u^p = t.
We store the unique representative whose coordinates are coprime polynomials
and whose first nonzero coordinate is monic.  The norm form
f(x) = sum t^i x_i^p equals alpha^p and is the canonical boundary section.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gf import Field
from .polyfield import (
    Place,
    Polynomial,
    factor_places,
    padd,
    pcode,
    pdivmod,
    pfrob,
    pgcd_many,
    pmul,
    pscale,
    pvaluation,
)


class GroupPoint:
    """Canonical representative of a point of G.  Immutable."""

    __slots__ = ("field", "coords", "_norm")

    def __init__(self, field: Field, coords: Sequence[tuple]):
        coords = tuple(tuple(c) for c in coords)
        if len(coords) != field.p:
            raise ValueError(f"expected {field.p} coordinates, got {len(coords)}")
        if not is_canonical(field, coords):
            raise ValueError(f"{coords!r} is not a canonical (primitive, least-index monic) tuple")
        self.field = field
        self.coords = coords
        self._norm = None

    @classmethod
    def _trusted(cls, field: Field, coords: tuple) -> GroupPoint:
        obj = cls.__new__(cls)
        obj.field = field
        obj.coords = coords
        obj._norm = None
        return obj

    @classmethod
    def identity(cls, field: Field) -> GroupPoint:
        return cls._trusted(field, ((1,),) + ((),) * (field.p - 1))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def norm(self) -> tuple:
        if self._norm is None:
            self._norm = norm_tuple(self.field, self.coords)
        return self._norm

    def polys(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial._raw(self.field, c) for c in self.coords)

    def sort_key(self) -> tuple:
        return tuple(pcode(self.field, c) for c in self.coords)

    def is_identity(self) -> bool:
        return self.coords[0] == (1,) and not any(self.coords[1:])

    def __mul__(self, other: GroupPoint) -> GroupPoint:
        return group_mul(self, other)

    def __pow__(self, n: int) -> GroupPoint:
        if n < 0:
            return group_inv(self) ** (-n)
        result = GroupPoint.identity(self.field)
        base = self
        while n:
            if n & 1:
                result = group_mul(result, base)
            base = group_mul(base, base)
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, GroupPoint):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coords))

    def __lt__(self, other: GroupPoint):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "(" + ", ".join(repr(f) for f in self.polys()) + ")"

    def to_json(self) -> list:
        return [Polynomial._raw(self.field, c).to_json() for c in self.coords]

    @classmethod
    def from_json(cls, field: Field, data) -> GroupPoint:
        polys = [Polynomial.from_json(field, c) for c in data]
        return cls(field, [f.c for f in polys])


def is_canonical(field: Field, coords: Sequence[tuple]) -> bool:
    lead = next((c for c in coords if c), None)
    if lead is None or lead[-1] != 1:
        return False
    return pgcd_many(field, coords) == (1,)


def canonicalize(field: Field, coords: Sequence[tuple]) -> tuple:
    """Divide out the content and make the first nonzero coordinate monic."""
    g = pgcd_many(field, coords)
    if not g:
        raise ValueError("all coordinates are zero")
    if g != (1,):
        coords = [pdivmod(field, c, g)[0] for c in coords]
    lead = next(c for c in coords if c)
    if lead[-1] != 1:
        s = field.inv(lead[-1])
        coords = [pscale(field, s, c) for c in coords]
    return tuple(coords)


def make_point(coords: Sequence[Polynomial]) -> GroupPoint:
    """The point represented by any nonzero tuple of p polynomials."""
    if not coords:
        raise ValueError("no coordinates")
    field = coords[0].field
    if len(coords) != field.p:
        raise ValueError(f"expected {field.p} coordinates, got {len(coords)}")
    if any(c.field != field for c in coords):
        raise ValueError("coordinates over different fields")
    return GroupPoint._trusted(field, canonicalize(field, [c.c for c in coords]))


def norm_tuple(field: Field, coords: Sequence[tuple]) -> tuple:
    """sum_i t^i x_i^p on raw coefficient tuples."""
    acc: tuple = ()
    for i, x in enumerate(coords):
        if x:
            acc = padd(field, acc, (0,) * i + pfrob(field, x))
    return acc


def norm_form(x) -> Polynomial:
    """f(x) = sum_i t^i x_i^p, for a GroupPoint or a sequence of polynomials."""
    if isinstance(x, GroupPoint):
        return Polynomial._raw(x.field, x.norm)
    field = x[0].field
    return Polynomial._raw(field, norm_tuple(field, [c.c for c in x]))


def norm_degree(coords: Sequence[tuple], p: int) -> int:
    """deg f = max(p deg x_i + i); the terms never cancel since i differ mod p."""
    return max(p * (len(c) - 1) + i for i, c in enumerate(coords) if c)


def _mul_raw(field: Field, a: Sequence[tuple], b: Sequence[tuple]) -> list:
    p = field.p
    out: list = [()] * p
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            prod = pmul(field, x, y)
            k = i + j
            if k >= p:
                k -= p
                prod = (0,) + prod  # u^p = t
            out[k] = padd(field, out[k], prod)
    return out


def group_mul(a: GroupPoint, b: GroupPoint) -> GroupPoint:
    if a.field != b.field:
        raise ValueError("points over different fields")
    field = a.field
    return GroupPoint._trusted(field, canonicalize(field, _mul_raw(field, a.coords, b.coords)))


def group_inv(a: GroupPoint) -> GroupPoint:
    # alpha^(p-1) is alpha^-1 up to the scalar alpha^p = f(a) in F
    field = a.field
    acc: list = list(a.coords)
    for _ in range(field.p - 2):
        acc = _mul_raw(field, acc, a.coords)
    return GroupPoint._trusted(field, canonicalize(field, acc))


@dataclass(frozen=True)
class MetricValue:
    """||f(x)||_v = q_v^(-m)."""

    place: Place
    m: int

    def to_json(self) -> dict:
        return {"place": self.place.to_json(), "m": self.m}


def local_metric(v: Place, x: GroupPoint) -> MetricValue:
    if v.field != x.field:
        raise ValueError("place and point over different fields")
    if v.is_infinity:
        return MetricValue(v, 0)
    m = pvaluation(x.field, x.norm, v.pi)
    if m >= x.p:
        raise AssertionError(f"v(f(x)) = {m} >= p at {v!r} for primitive {x!r}")
    return MetricValue(v, m)


def height_route_a(x: GroupPoint) -> int:
    """sum over finite places of d_v * m_v, via trial division of f(x)."""
    f = Polynomial._raw(x.field, x.norm)
    return sum(v.degree * local_metric(v, x).m for v, _ in factor_places(f))


def height_route_b(x: GroupPoint) -> int:
    return norm_degree(x.coords, x.p)


def height(x: GroupPoint, route: str = "B") -> int:
    """Exponent M with H(x) = q^M."""
    if route == "B":
        return height_route_b(x)
    if route == "A":
        return height_route_a(x)
    raise ValueError(f"unknown route {route!r}")


def height_exponent(x: GroupPoint, lam=1) -> Fraction:
    """Exponent of H_lambda(x) = prod_v ||f(x)||_v^-lambda, a rational multiple of log q.

    Computed place by place (route A) so that it does not lean on deg f.
    """
    lam = Fraction(lam)
    return lam * height_route_a(x)
