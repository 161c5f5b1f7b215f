"""Polynomials over F_q, places of F_q(t), valuations and the zeta function.

Polynomials are immutable tuples of field codes, lowest degree first, with
no trailing zeros.  The module-level ``p*`` helpers work on those raw tuples
and are what the enumeration code calls in its inner loops; the
:class:`Polynomial` class is the friendly wrapper.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .gf import Field, FieldElement

NEG_INF = float("-inf")

# --- raw tuple arithmetic -----------------------------------------------------


def ptrim(a) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def pdeg(a: tuple) -> int:
    return len(a) - 1


def padd(F: Field, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    if F.e == 1:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        add = F.add
        out = [add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pneg(F: Field, a: tuple) -> tuple:
    return tuple(F.neg(x) for x in a)


def psub(F: Field, a: tuple, b: tuple) -> tuple:
    return padd(F, a, pneg(F, b))


def pscale(F: Field, c: int, a: tuple) -> tuple:
    if c == 0:
        return ()
    if F.e == 1:
        p = F.p
        return tuple(x * c % p for x in a)
    mul = F.mul
    return tuple(mul(c, x) for x in a)


def pmul(F: Field, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    if F.e == 1:
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        out = [c % p for c in out]
    else:
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pdivmod(F: Field, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    r = list(a)
    quo = [0] * (len(a) - db)
    inv_lead = F.inv(b[-1])
    prime = F.e == 1
    p = F.p
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        c = c * inv_lead % p if prime else F.mul(c, inv_lead)
        quo[k] = c
        if prime:
            for i, y in enumerate(b):
                r[k + i] = (r[k + i] - c * y) % p
        else:
            for i, y in enumerate(b):
                if y:
                    r[k + i] = F.sub(r[k + i], F.mul(c, y))
    while r and r[-1] == 0:
        r.pop()
    while quo and quo[-1] == 0:
        quo.pop()
    return tuple(quo), tuple(r)


def pmod(F: Field, a: tuple, b: tuple) -> tuple:
    return pdivmod(F, a, b)[1]


def pmonic(F: Field, a: tuple) -> tuple:
    if not a or a[-1] == 1:
        return a
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F: Field, a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pgcd_many(F: Field, polys: Iterable[tuple]) -> tuple:
    """Monic gcd of several polynomials, stopping as soon as it reaches 1."""
    g: tuple = ()
    for f in polys:
        if not f:
            continue
        g = pgcd(F, g, f) if g else pmonic(F, f)
        if len(g) == 1:
            return (1,)
    return g


def ppowmod(F: Field, a: tuple, n: int, m: tuple) -> tuple:
    result: tuple = (1,)
    base = pmod(F, a, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        n >>= 1
    return result


def pfrob(F: Field, a: tuple) -> tuple:
    """a(t)^p: Frobenius on coefficients, exponents multiplied by p."""
    p = F.p
    if not a:
        return ()
    out = [0] * (p * (len(a) - 1) + 1)
    frob = F.frob
    for i, c in enumerate(a):
        out[p * i] = c if F.e == 1 else frob(c)
    return tuple(out)


def peval(F: Field, a: tuple, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pvaluation(F: Field, a: tuple, pi: tuple) -> int:
    """Multiplicity of pi in a (a nonzero)."""
    if not a:
        raise ValueError("valuation of the zero polynomial is undefined")
    m = 0
    while True:
        quo, rem = pdivmod(F, a, pi)
        if rem:
            return m
        a = quo
        m += 1


def pcode(F: Field, a: tuple) -> int:
    """Integer code sum c_i q^i; orders polynomials by degree then leading coefficients."""
    code = 0
    for c in reversed(a):
        code = code * F.q + c
    return code


def pfromcode(F: Field, code: int) -> tuple:
    out = []
    q = F.q
    while code:
        code, r = divmod(code, q)
        out.append(r)
    return tuple(out)


def polys_of_degree(F: Field, d: int, monic: bool = False) -> Iterable[tuple]:
    """All polynomials of exact degree d (d = -1 yields only zero)."""
    if d < 0:
        yield ()
        return
    q = F.q
    leads = (1,) if monic else range(1, q)
    base = q**d
    for lead in leads:
        for low in range(base):
            yield pfromcode(F, low + lead * base) if low else (0,) * d + (lead,)


def polys_up_to_degree(F: Field, d: int) -> Iterable[tuple]:
    """All polynomials of degree <= d, including zero, in code order."""
    for code in range(F.q ** (d + 1)):
        yield pfromcode(F, code)


# --- Polynomial wrapper -------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial over a finite field, lowest degree first."""

    __slots__ = ("field", "c")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        self.field = field
        out = []
        for x in coeffs:
            if isinstance(x, FieldElement):
                if x.field != field:
                    raise ValueError(f"coefficient from {x.field!r} in {field!r}")
                out.append(x.code)
            elif isinstance(x, int):
                if not 0 <= x < field.q:
                    raise ValueError(f"coefficient code {x} out of range for {field!r}")
                out.append(x)
            else:
                out.append(field.from_coords(x))
        self.c = ptrim(out)

    @classmethod
    def _raw(cls, field: Field, c: tuple) -> Polynomial:
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = c
        return obj

    @classmethod
    def t(cls, field: Field) -> Polynomial:
        return cls._raw(field, (0, 1))

    @classmethod
    def const(cls, field: Field, a: int) -> Polynomial:
        return cls._raw(field, ptrim([a % field.q]))

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def monic(self) -> Polynomial:
        return Polynomial._raw(self.field, pmonic(self.field, self.c))

    def _coerce(self, other) -> tuple:
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError(f"mixed-field polynomials: {self.field!r}, {other.field!r}")
            return other.c
        if isinstance(other, int):
            return ptrim([other % self.field.p])
        if isinstance(other, FieldElement):
            return ptrim([self.field(other).code])
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        return Polynomial._raw(self.field, padd(self.field, self.c, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Polynomial._raw(self.field, psub(self.field, self.c, self._coerce(other)))

    def __rsub__(self, other):
        return Polynomial._raw(self.field, psub(self.field, self._coerce(other), self.c))

    def __neg__(self):
        return Polynomial._raw(self.field, pneg(self.field, self.c))

    def __mul__(self, other):
        return Polynomial._raw(self.field, pmul(self.field, self.c, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result: tuple = (1,)
        base = self.c
        while n:
            if n & 1:
                result = pmul(self.field, result, base)
            base = pmul(self.field, base, base)
            n >>= 1
        return Polynomial._raw(self.field, result)

    def __divmod__(self, other):
        q, r = pdivmod(self.field, self.c, self._coerce(other))
        return Polynomial._raw(self.field, q), Polynomial._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        x = self.field(x)
        return FieldElement(self.field, peval(self.field, self.c, x.code))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == ptrim([other % self.field.p])
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.c))

    def __lt__(self, other: Polynomial):
        return pcode(self.field, self.c) < pcode(other.field, other.c)

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            coef = repr(self.field.element(a))
            if i == 0:
                terms.append(coef)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if a == 1 else f"{coef}*{mono}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [list(self.field.coords(a)) for a in self.c]

    @classmethod
    def from_json(cls, field: Field, data) -> Polynomial:
        return cls(field, [tuple(x) if isinstance(x, (list, tuple)) else x for x in data])


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.field != g.field:
        raise ValueError("mixed-field gcd")
    return Polynomial._raw(f.field, pgcd(f.field, f.c, g.c))


def content(polys: Sequence[Polynomial]) -> Polynomial:
    """Monic gcd of a tuple of polynomials (zero if all are zero)."""
    F = polys[0].field
    return Polynomial._raw(F, pgcd_many(F, (f.c for f in polys)))


def primitive_part(polys: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Divide every entry by the content of the tuple."""
    g = content(polys)
    if g.is_zero():
        raise ValueError("primitive part of an all-zero tuple")
    return tuple(f // g for f in polys)


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's distinct-degree test.

    f of degree d is irreducible iff t^(q^d) = t mod f and
    gcd(t^(q^(d/r)) - t, f) = 1 for every prime r dividing d.
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("irreducibility is defined for polynomials of degree >= 1")
    F, a = f.field, pmonic(f.field, f.c)
    d = len(a) - 1
    t = (0, 1)
    # frob_powers[k] = t^(q^k) mod f
    frob_powers = [pmod(F, t, a)]
    for _ in range(d):
        frob_powers.append(ppowmod(F, frob_powers[-1], F.q, a))
    if psub(F, frob_powers[d], pmod(F, t, a)):
        return False
    for r in _prime_factors(d):
        h = psub(F, frob_powers[d // r], t)
        if len(pgcd(F, a, h)) != 1:
            return False
    return True


def count_irreducible(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (necklace formula)."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(d // e) * q**e
    return total // d


def _mobius(n: int) -> int:
    result = 1
    for r in _prime_factors(n):
        if (n // r) % r == 0:
            return 0
        result = -result
    return result


# --- places -------------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A place of F_q(t): a monic irreducible pi, or infinity (pi is None)."""

    field: Field
    pi: tuple | None = None

    @property
    def is_infinity(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else len(self.pi) - 1

    @property
    def q_v(self) -> int:
        return self.field.q ** self.degree

    @property
    def poly(self) -> Polynomial:
        if self.pi is None:
            raise ValueError("the infinite place has no polynomial")
        return Polynomial._raw(self.field, self.pi)

    @classmethod
    def infinity(cls, field: Field) -> Place:
        return cls(field, None)

    @classmethod
    def finite(cls, f: Polynomial) -> Place:
        if not f.is_monic() or not is_irreducible(f):
            raise ValueError(f"{f!r} is not monic irreducible")
        return cls(f.field, f.c)

    def __repr__(self):
        return "inf" if self.pi is None else f"({self.poly!r})"

    def to_json(self) -> dict:
        if self.pi is None:
            return {"kind": "infinity"}
        return {"kind": "finite", "pi": self.poly.to_json()}


@functools.lru_cache(maxsize=None)
def _irreducibles_of_degree(field: Field, d: int) -> tuple[tuple, ...]:
    """Monic irreducibles of degree d, by sieving out products of lower degrees."""
    if d == 1:
        return tuple((a, 1) for a in range(field.q))
    reducible = set()
    for k in range(1, d // 2 + 1):
        for g in _irreducibles_of_degree(field, k):
            for h in polys_of_degree(field, d - k, monic=True):
                reducible.add(pcode(field, pmul(field, g, h)))
    out = []
    for f in polys_of_degree(field, d, monic=True):
        if pcode(field, f) not in reducible:
            out.append(f)
    return tuple(out)


def places_of_degree(field: Field, d: int) -> list[Place]:
    return [Place(field, f) for f in _irreducibles_of_degree(field, d)]


def places_up_to(field: Field, D: int) -> list[Place]:
    """Infinity, then every finite place of degree <= D in (degree, lexicographic) order."""
    if D < 1:
        raise ValueError("D must be >= 1")
    out = [Place.infinity(field)]
    for d in range(1, D + 1):
        out.extend(places_of_degree(field, d))
    return out


def first_place_of_degree(field: Field, d: int) -> Place:
    for f in polys_of_degree(field, d, monic=True):
        if is_irreducible(Polynomial._raw(field, f)):
            return Place(field, f)
    raise AssertionError("every degree has an irreducible")  # unreachable


# --- rational functions and valuations ---------------------------------------


class RationalFunction:
    """Reduced fraction num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        F = num.field
        if den is None:
            den = Polynomial._raw(F, (1,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(num, den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        lead = den.lc
        if lead != 1:
            inv = F.inv(lead)
            num = Polynomial._raw(F, pscale(F, inv, num.c))
            den = Polynomial._raw(F, pscale(F, inv, den.c))
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


def valuation(v: Place, f) -> int:
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    if f.is_zero():
        raise ValueError("valuation of zero is undefined")
    if v.is_infinity:
        return f.den.degree - f.num.degree
    F = v.field
    return pvaluation(F, f.num.c, v.pi) - pvaluation(F, f.den.c, v.pi)


def abs_value(v: Place, f) -> Fraction:
    return Fraction(v.q_v) ** (-valuation(v, f))


def factor_places(f: Polynomial) -> list[tuple[Place, int]]:
    """Finite places dividing the nonzero polynomial f, with multiplicities.

    Trial division by irreducibles in increasing degree; once the cofactor has
    degree below twice the current trial degree it is itself irreducible.
    """
    F = f.field
    a = f.c
    if not a:
        raise ValueError("zero polynomial")
    out = []
    d = 1
    while len(a) - 1 >= 2 * d:
        for pi in _irreducibles_of_degree(F, d):
            quo, rem = pdivmod(F, a, pi)
            if rem:
                continue
            m = 0
            while not rem:
                a, m = quo, m + 1
                quo, rem = pdivmod(F, a, pi)
            out.append((Place(F, pi), m))
        d += 1
    if len(a) > 1:
        out.append((Place(F, pmonic(F, a)), 1))
    out.sort(key=lambda pm: (pm[0].degree, pcode(F, pm[0].pi)))
    return out


def places_dividing(f: Polynomial) -> list[Place]:
    """Finite places where the nonzero polynomial f has positive valuation."""
    return [v for v, _ in factor_places(f)]


# --- zeta function and Euler products ----------------------------------------


class PoleError(ValueError):
    """Evaluation exactly at a pole."""


def zeta_closed(field: Field, s: complex) -> complex:
    """zeta_F(s) = 1 / ((1 - q^-s)(1 - q^(1-s))) for F = F_q(t), infinity included."""
    q = field.q
    a = 1 - q ** (-complex(s))
    b = 1 - q ** (1 - complex(s))
    if abs(a) < 1e-14 or abs(b) < 1e-14:
        raise PoleError(f"zeta_F has a pole at s = {s}")
    return 1 / (a * b)


def zeta_residue(field: Field) -> float:
    q = field.q
    return q / ((q - 1) * math.log(q))


@dataclass(frozen=True)
class EulerProductReport:
    value: complex
    cutoff_degree: int
    tail_bound: float
    include_infinity: bool

    def to_json(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "cutoff_degree": self.cutoff_degree,
            "tail_bound": self.tail_bound,
        }


def euler_tail_sum(q: int, D: int, delta: float, constant: float = 1.0) -> float:
    """Upper bound for sum over places of degree > D of constant * q_v^(-1-delta).

    Uses #(places of degree d) <= q^d / d.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    r = q ** (-delta)
    return constant * r ** (D + 1) / ((D + 1) * (1 - r))


def euler_product(
    factor: Callable[[Place], complex],
    field: Field,
    D: int,
    include_infinity: bool = False,
    delta: float = 1.0,
    constant: float = 1.0,
    by_degree: bool = False,
) -> EulerProductReport:
    """Product of factor(v) over finite places of degree <= D (and optionally infinity).

    Each factor is declared to satisfy |factor(v) - 1| <= constant * q_v^(-1-delta);
    the reported tail bound is |value| * (exp(S) - 1) where S bounds the sum of
    those deviations over the omitted places.

    With ``by_degree=True`` the factor is assumed to depend on q_v only: it is
    evaluated at one place per degree and raised to the number of places of that
    degree, so large cutoffs stay cheap.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if D < 1:
        raise ValueError("D must be >= 1")
    # accumulate logarithms so that large place counts do not amplify rounding
    re_parts: list[float] = []
    im_parts: list[float] = []

    def take(v: Place, times: int = 1):
        z = _log_factor(factor(v))
        re_parts.append(times * z.real)
        im_parts.append(times * z.imag)

    if include_infinity:
        take(Place.infinity(field))
    for d in range(1, D + 1):
        if by_degree:
            take(first_place_of_degree(field, d), count_irreducible(field.q, d))
        else:
            for v in places_of_degree(field, d):
                take(v)
    value = cmath.exp(complex(math.fsum(re_parts), math.fsum(im_parts)))
    S = euler_tail_sum(field.q, D, delta, constant)
    tail = abs(value) * math.expm1(S)
    return EulerProductReport(value, D, tail, include_infinity)


def _log_factor(x) -> complex:
    """log of one Euler factor; exact rationals near 1 go through log1p."""
    if isinstance(x, (int, Fraction)) and x > 0:
        return complex(math.log1p(float(Fraction(x) - 1)))
    x = complex(x)
    if x == 0:
        raise ZeroDivisionError("an Euler factor vanishes")
    return cmath.log(x)


def local_zeta_factor(s: complex) -> Callable[[Place], complex]:
    return lambda v: 1 / (1 - cmath.exp(-complex(s) * math.log(v.q_v)))
