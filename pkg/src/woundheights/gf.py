"""Finite fields F_{p^e} in fixed-modulus coordinates.

Elements are stored as integer codes: the coordinate vector (c_0, ..., c_{e-1})
with respect to the power basis of the modulus root is packed as
``c_0 + c_1 p + ... + c_{e-1} p^(e-1)``.  Codes ``0 .. p-1`` are exactly the
prime subfield.  :class:`FieldElement` wraps a code for user-facing work;
the polynomial layer works on raw codes for speed.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

MAX_DEGREE = 8
# add/mul tables are built below this cardinality; above it we compute on demand
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# --- tiny F_p[x] helpers, only used to pick and apply the modulus -----------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _fp_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _fp_mod(m, divisor, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over F_p.

    Candidates are ordered by the coefficient tuple read from the leading
    coefficient down.  Returned low-degree first, length e + 1.
    """
    for high_first in itertools.product(range(p), repeat=e):
        m = list(reversed(high_first)) + [1]
        if _fp_irreducible(m, p):
            return tuple(m)
    raise AssertionError(f"no irreducible of degree {e} over F_{p}")  # unreachable


class Field:
    """The finite field F_q, q = p^e.

    Use :func:`GF` rather than the constructor so that fields are shared.
    """

    def __init__(self, p: int, e: int = 1):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if not isinstance(e, int) or not 1 <= e <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [1, {MAX_DEGREE}], got {e!r}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = least_irreducible(p, e) if e > 1 else None
        self._coords = None
        self._add = None
        self._mul = None
        if e > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # pickling and equality go through (p, e); GF() is cached
    def __reduce__(self):
        return (GF, (self.p, self.e))

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("Field", self.p, self.e))

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # --- code <-> coordinates ---------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        if self._coords is not None:
            return self._coords[a]
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.e:
            raise ValueError(f"expected at most {self.e} coordinates, got {len(coords)}")
        code = 0
        for c in reversed(coords):
            code = code * self.p + (int(c) % self.p)
        return code

    def _build_tables(self):
        q = self.q
        self._coords = [self.coords_slow(a) for a in range(q)]
        self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]

    def coords_slow(self, a):
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _add_slow(self, a, b):
        p = self.p
        ca, cb = self.coords_slow(a), self.coords_slow(b)
        return self.from_coords([(x + y) % p for x, y in zip(ca, cb)])

    def _mul_slow(self, a, b):
        p, e = self.p, self.e
        ca, cb = self.coords_slow(a), self.coords_slow(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _fp_mod(prod, list(self.modulus), p)
        return self.from_coords(red)

    # --- arithmetic on codes ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        p = self.p
        return self.from_coords([-c % p for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            raise ValueError("negative exponent; use inv() first")
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        total, x = 0, a
        for _ in range(self.e):
            total = self.add(total, x)
            x = self.frob(x)
        if total >= self.p:
            raise AssertionError("trace left the prime subfield")
        return total

    # --- convenience ------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"element of {value.field!r} used in {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.from_coords(value))

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The root of the modulus (t in coordinates); 0-based code p when e > 1."""
        return FieldElement(self, self.p if self.e > 1 else 1)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus) if self.modulus else None}


@functools.lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> Field:
    """Create (or fetch) the field F_{p^e}."""
    return Field(p, e)


def field_create(p: int, e: int) -> Field:
    return GF(p, e)


def field_for(p: int, q: int) -> Field:
    """The field of cardinality q, which must be a power of the prime p."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or e == 0:
        raise ValueError(f"q = {q} is not a power of p = {p}")
    return GF(p, e)


@dataclass(frozen=True, eq=False, slots=True)
class FieldElement:
    field: Field
    code: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed-field operands: {self.field!r} and {other.field!r}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self) -> FieldElement:
        return FieldElement(self.field, self.field.frob(self.code))

    def trace(self) -> int:
        return self.field.trace(self.code)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.code))

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.code}"
        return f"[{','.join(map(str, self.coords))}]"

    def to_json(self) -> list[int]:
        return list(self.coords)


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()
