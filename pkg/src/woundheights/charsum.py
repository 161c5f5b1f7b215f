"""Additive character sums over the units of a local field F_{q_v}((pi)).

Local elements are truncated Laurent series with coefficients in the residue
field.  Integrals over o_v^* are computed as normalized finite sums over unit
residues modulo pi^e.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

from .gf import Field, field_for
from .polyfield import Place

BRUTE_LIMIT = 300_000  # terms; above this "auto" switches to the split method


def residue_field(v: Place) -> Field:
    """A copy of F_{q_v} (any model of it; the trace does not depend on the choice)."""
    if v.is_infinity:
        return v.field
    return field_for(v.field.p, v.q_v)


@dataclass(frozen=True)
class LaurentTruncation:
    """sum_{k=-N}^{e-1} c_k pi^k with c_k codes in ``field``."""

    field: Field
    N: int
    coeffs: tuple
    truncated: bool = False

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("N must be >= 0")
        if any(not 0 <= c < self.field.q for c in self.coeffs):
            raise ValueError("coefficient code out of range")

    @property
    def e(self) -> int:
        return len(self.coeffs) - self.N

    def coeff(self, k: int) -> int:
        if not -self.N <= k < self.e:
            raise IndexError(f"index {k} outside the window [{-self.N}, {self.e})")
        return self.coeffs[k + self.N]

    @classmethod
    def from_coeffs(cls, field: Field, coeffs, N: int = 0) -> LaurentTruncation:
        return cls(field, N, tuple(field(c).code if not isinstance(c, int) else c for c in coeffs))

    def _check(self, other: LaurentTruncation):
        if self.field != other.field:
            raise ValueError("series over different residue fields")

    def __add__(self, other: LaurentTruncation) -> LaurentTruncation:
        self._check(other)
        F = self.field
        lo = max(self.N, other.N)
        hi = min(self.e, other.e)
        out = []
        for k in range(-lo, hi):
            a = self.coeff(k) if k >= -self.N else 0
            b = other.coeff(k) if k >= -other.N else 0
            out.append(F.add(a, b))
        dropped = self.e != other.e
        return LaurentTruncation(F, lo, tuple(out), self.truncated or other.truncated or dropped)

    def __mul__(self, other: LaurentTruncation) -> LaurentTruncation:
        self._check(other)
        F = self.field
        lo = self.N + other.N
        hi = min(self.e - other.N, other.e - self.N)
        full = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[i + j] = F.add(full[i + j], F.mul(a, b))
        keep = hi + lo
        dropped = any(full[keep:])
        return LaurentTruncation(F, lo, tuple(full[:keep]), self.truncated or other.truncated or dropped)

    def shift(self, k: int) -> LaurentTruncation:
        """Multiply by pi^k."""
        N = self.N - k
        if N >= 0:
            return LaurentTruncation(self.field, N, self.coeffs, self.truncated)
        return LaurentTruncation(self.field, 0, (0,) * (-N) + self.coeffs, self.truncated)


def _chi(p: int, a: int) -> complex:
    return cmath.exp(2j * math.pi * a / p)


def phi_character(x: LaurentTruncation) -> complex:
    """exp(2 pi i Tr(x_{-1}) / p)."""
    if x.N < 1:
        # x is integral, so the pi^-1 coefficient is zero
        return 1 + 0j
    return _chi(x.field.p, x.field.trace(x.coeff(-1)))


# --- truncated power-series helpers on code lists ----------------------------


def _series_mul(F: Field, a, b, P: int) -> list:
    out = [0] * P
    for i, x in enumerate(a[:P]):
        if x:
            for j in range(min(len(b), P - i)):
                y = b[j]
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _series_pow(F: Field, a, d: int, P: int) -> list:
    result = [1] + [0] * (P - 1)
    base = list(a[:P]) + [0] * max(0, P - len(a))
    while d:
        if d & 1:
            result = _series_mul(F, result, base, P)
        base = _series_mul(F, base, base, P)
        d >>= 1
    return result


def _units(F: Field, length: int):
    q = F.q
    for w0 in range(1, q):
        for rest in itertools.product(range(q), repeat=length - 1):
            yield (w0,) + rest


# --- the sum ---------------------------------------------------------------------


@dataclass(frozen=True)
class CharSumResult:
    value: complex
    e: int
    stabilized: bool
    method: str
    lemma_applies: bool

    def to_json(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "e": self.e,
            "stabilized": self.stabilized,
            "method": self.method,
            "lemma_applies": self.lemma_applies,
        }


def lemma_value(q_v: int, n: int, d: int) -> float:
    """Closed form of the unit integral (valid when p does not divide d)."""
    if d == 0:
        return 1 - 1 / q_v
    if n == 1 and d == 1:
        return -1 / q_v
    return 0.0


def _unit_codes(u, P: int) -> tuple[Field, list]:
    if isinstance(u, LaurentTruncation):
        if u.N != 0 and any(u.coeffs[: u.N]):
            raise ValueError("u must be integral")
        codes = list(u.coeffs[u.N:])
        F = u.field
    else:
        raise TypeError("u must be a LaurentTruncation")
    if not codes or codes[0] == 0:
        raise ValueError("u must be a unit")
    # coefficients beyond the window are taken to be zero
    return F, (codes + [0] * P)[:max(P, 1)]


def _sum_bruteforce(F: Field, u, n: int, d: int, e: int) -> complex:
    """q_v^-e * sum over w in (o/pi^e)^* of phi(u pi^(-nd) w^d)."""
    P = n * d
    p = F.p
    total = 0j
    for w in _units(F, e):
        if P == 0:
            total += 1
            continue
        y = _series_mul(F, u, _series_pow(F, w, d, P), P)
        total += _chi(p, F.trace(y[P - 1]))
    return total / F.q**e


def _sum_split(F: Field, u, n: int, d: int, e: int) -> complex:
    """Same sum, grouping w = a + pi^h b (mod pi^P), P = nd, h = ceil(P/2).

    Then u w^d = u a^d + d u a^(d-1) pi^h b (mod pi^P), so for fixed a the sum
    over b is a product of one-variable sums over the residue field.
    """
    P = n * d
    q, p = F.q, F.p
    if e < P:
        raise ValueError("the split method needs e >= n*d")
    if P == 0:
        # constant integrand 1 over the units
        return complex((q - 1) * q ** (e - 1) / q**e)
    h = (P + 1) // 2
    tail = P - h
    dd = (d % p) % q  # d as an element of the prime field
    one_dim = {}

    def S(gamma: int) -> complex:
        # sum over b in F_{q_v} of chi(Tr(gamma b))
        if gamma not in one_dim:
            one_dim[gamma] = sum(_chi(p, F.trace(F.mul(gamma, b))) for b in range(q))
        return one_dim[gamma]

    total = 0j
    for a in _units(F, h):
        ua_d = _series_mul(F, u, _series_pow(F, a, d, P), P)
        head = _chi(p, F.trace(ua_d[P - 1]))
        c = _series_mul(F, u, _series_pow(F, a, d - 1, tail), tail) if tail else []
        c = [F.mul(dd, x) for x in c]
        inner = 1 + 0j
        # b_k pi^(h+k) meets c_j pi^j at index P-1 when j = P-1-h-k
        for k in range(tail):
            inner *= S(c[P - 1 - h - k])
        total += head * inner
    # w mod pi^e: each class mod pi^P splits into q^(e-P) classes with the same value
    return total * q ** (e - P) / q**e


def unit_character_sum(u: LaurentTruncation, n: int, d: int, e: int | None = None,
                       method: str = "auto") -> CharSumResult:
    """Integral over o_v^* of phi(u pi^(-nd) w^d) dw, Haar measure with vol(o_v) = 1."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    P = n * d
    if e is None:
        e = P + 1
    if e < 1:
        raise ValueError("precision e must be >= 1")
    F, ucodes = _unit_codes(u, P)
    if method == "auto":
        method = "bruteforce" if F.q ** (e + 1) <= BRUTE_LIMIT else "split"
    if method == "bruteforce":
        run = lambda ee: _sum_bruteforce(F, ucodes, n, d, ee)  # noqa: E731
    elif method == "split":
        run = lambda ee: _sum_split(F, ucodes, n, d, ee)  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")
    value = run(e)
    stabilized = abs(value - run(e + 1)) <= 1e-12
    lemma_applies = d == 0 or d % F.p != 0
    return CharSumResult(value, e, stabilized, method, lemma_applies)


def lemma_table(q_values=(2, 3, 4, 5), n_max: int = 3, d_max: int = 4, method: str = "auto"):
    """Rows (q_v, n, d, computed, expected) for every p not dividing d."""
    rows = []
    for q_v in q_values:
        p = min(r for r in range(2, q_v + 1) if q_v % r == 0)
        F = field_for(p, q_v)
        u = LaurentTruncation(F, 0, (1,))
        for n in range(1, n_max + 1):
            for d in range(0, d_max + 1):
                if d and d % p == 0:
                    continue
                res = unit_character_sum(u, n, d, method=method)
                rows.append((q_v, n, d, res, lemma_value(q_v, n, d)))
    return rows
