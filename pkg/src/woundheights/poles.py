"""Pole invariants of a height zeta function and the Tauberian predictions.

Everything combinatorial stays in exact rationals; floats only appear when a
pole or a prediction is rendered numerically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, Sequence


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class BundleClass:
    """lambda_a and rho_a per boundary index; denominators of lambda must be powers of p."""

    lam: Mapping
    rho: Mapping
    p: int | None = None

    def __post_init__(self):
        if set(self.lam) != set(self.rho):
            raise ValueError("lambda and rho must have the same indices")
        if not self.lam:
            raise ValueError("at least one boundary index is required")
        object.__setattr__(self, "lam", {a: Fraction(x) for a, x in self.lam.items()})
        for a, x in self.lam.items():
            if x <= 0:
                raise ValueError(f"lambda[{a!r}] = {x} is not positive")
            if self.p is not None and not _is_power_of(x.denominator, self.p):
                raise ValueError(f"denominator of lambda[{a!r}] = {x} is not a power of {self.p}")
        for a, r in self.rho.items():
            if int(r) != r or r < 1:
                raise ValueError(f"rho[{a!r}] = {r} must be an integer >= 1")

    def scaled(self, k) -> BundleClass:
        return BundleClass({a: k * x for a, x in self.lam.items()}, dict(self.rho), self.p)


def _gcd(xs) -> int:
    return reduce(math.gcd, xs, 0)


def _lcm(xs) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


@dataclass(frozen=True)
class PoleStructure:
    a: Fraction
    A: tuple
    b: int
    d: Fraction
    g: Fraction
    q: int

    @property
    def J(self) -> range:
        return range(math.ceil(self.d))

    def pole(self, j: int) -> complex:
        return complex(float(self.a), j * 2 * math.pi / (float(self.d) * math.log(self.q)))

    @property
    def poles(self) -> list[complex]:
        return [self.pole(j) for j in self.J]

    @property
    def period(self) -> complex:
        """Imaginary period 2 pi i / (g log q)."""
        return complex(0, 2 * math.pi / (float(self.g) * math.log(self.q)))

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "a_float": float(self.a),
            "A": [str(x) for x in self.A],
            "b": self.b,
            "d": str(self.d),
            "d_float": float(self.d),
            "g": str(self.g),
            "g_float": float(self.g),
            "q": self.q,
            "poles": [
                {
                    "j": j,
                    "re": str(self.a),
                    "im_multiple_of": "2π/(d·log q)",
                    "multiple": j,
                    "re_float": self.pole(j).real,
                    "im_float": self.pole(j).imag,
                }
                for j in self.J
            ],
            "period": {"im_multiple_of": "2π/(g·log q)", "multiple": 1, "im_float": self.period.imag},
        }


def pole_structure(cls: BundleClass, q: int) -> PoleStructure:
    ratios = {a: Fraction(cls.rho[a]) / cls.lam[a] for a in cls.lam}
    a_max = max(ratios.values())
    A = tuple(sorted((x for x, r in ratios.items() if r == a_max), key=str))
    num = {x: lam.numerator for x, lam in cls.lam.items()}
    den_lcm = _lcm(lam.denominator for lam in cls.lam.values())
    g = Fraction(_gcd(num.values()), den_lcm)
    d = Fraction(_gcd(num[x] for x in A), den_lcm)
    return PoleStructure(a=a_max, A=A, b=len(A), d=d, g=g, q=q)


def tauberian_predict(a, b: int, d, residues: Sequence[complex], q: int, M: int) -> float:
    """(log q)^b / (b-1)! * M^(b-1) * sum_j r_j q^(s_j M), real part."""
    n_poles = math.ceil(Fraction(d))
    if len(residues) != n_poles:
        raise ValueError(f"expected {n_poles} residues, got {len(residues)}")
    if b < 1:
        raise ValueError("pole order b must be >= 1")
    lq = math.log(q)
    a, d = float(Fraction(a)), float(Fraction(d))
    total = 0j
    for j, r in enumerate(residues):
        total += r * cmath.exp(complex(a * M * lq, 2 * math.pi * j * M / d))
    return (lq**b / math.factorial(b - 1) * M ** (b - 1) * total).real


def averaged_asymptotic(c: float, a, b: int, d, q: int, M: int) -> float:
    """c (log q)^b / (b-1)! q^(aM) M^(b-1); d only fixes which counts are averaged."""
    if b < 1:
        raise ValueError("pole order b must be >= 1")
    return c * math.log(q) ** b / math.factorial(b - 1) * q ** (float(Fraction(a)) * M) * M ** (b - 1)


def anticanonical_class(p: int) -> BundleClass:
    """The single non-reduced boundary index with rho = 1, lambda = rho."""
    return BundleClass({"beta": 1}, {"beta": 1}, p)
