"""Local transforms at the trivial character, volumes, and the leading constant.

Residue classes of P^{p-1}(F_v) are represented by tuples of polynomials of
degree < d_v (the set S_v), scaled so that the first nonzero entry is 1.
For such a tuple the norm sum_i t^i x_i^p has degree < p d_v, so its
valuation at v is automatically below p.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping

from .gf import Field
from .polyfield import (
    EulerProductReport,
    Place,
    PoleError,
    euler_product,
    pcode,
    polys_up_to_degree,
    pvaluation,
    zeta_residue,
)
from .wound import norm_tuple

# --- residue classes -------------------------------------------------------


def _residue_reps(v: Place):
    """S_v: polynomials of degree < d_v, zero first."""
    return list(polys_up_to_degree(v.field, v.degree - 1))


def projective_classes(v: Place):
    """Normalized representatives of P^{p-1}(F_v): (0, ..., 0, 1, *, ..., *)."""
    p = v.field.p
    S = _residue_reps(v)
    for lead in range(p):
        for tail in itertools.product(S, repeat=p - 1 - lead):
            yield ((),) * lead + ((1,),) + tail


def class_exponent(v: Place, coords) -> int:
    """m = v(sum t^i x_i^p) for a residue-class representative; always < p."""
    f = norm_tuple(v.field, coords)
    m = pvaluation(v.field, f, v.pi)
    if m >= v.field.p:
        raise AssertionError(f"exponent {m} >= p at {v!r} for {coords!r}")
    return m


@functools.lru_cache(maxsize=64)
def _exponents(v: Place) -> tuple[int, ...]:
    return tuple(class_exponent(v, x) for x in projective_classes(v))


@dataclass(frozen=True)
class ValuationHistogram:
    place: Place
    counts: dict[int, int]
    total: int

    @staticmethod
    def expected(q_v: int, p: int) -> dict[int, int]:
        out = {0: q_v ** (p - 1)}
        for m in range(1, p):
            out[m] = q_v ** (p - 1 - m)
        return out

    def matches_expected(self) -> bool:
        p = self.place.field.p
        return self.counts == self.expected(self.place.q_v, p)

    def to_json(self) -> dict:
        return {
            "place": self.place.to_json(),
            "counts": {str(m): n for m, n in sorted(self.counts.items())},
            "total": self.total,
        }


def valuation_histogram(v: Place) -> ValuationHistogram:
    if v.is_infinity:
        raise ValueError("histograms are defined at finite places")
    p = v.field.p
    counts = {m: 0 for m in range(p)}
    n = 0
    for m in _exponents(v):
        counts[m] += 1
        n += 1
    expected_total = (v.q_v**p - 1) // (v.q_v - 1)
    if n != expected_total:
        raise AssertionError(f"enumerated {n} classes, expected {expected_total}")
    return ValuationHistogram(v, counts, n)


def residue_norm_bijection(v: Place, norm=None) -> bool:
    """Is (x_0, ..., x_{p-1}) -> sum t^i x_i^p a bijection S_v^p -> {deg < p d_v}?

    ``norm`` replaces the map (used to inject collisions in negative tests).
    """
    if v.is_infinity:
        raise ValueError("defined at finite places only")
    F = v.field
    p = F.p
    bound = p * v.degree
    if norm is None:
        norm = lambda xs: norm_tuple(F, xs)  # noqa: E731
    seen = set()
    n = 0
    for xs in itertools.product(_residue_reps(v), repeat=p):
        f = norm(xs)
        if len(f) > bound:
            return False
        seen.add(pcode(F, f))
        n += 1
    return len(seen) == n == F.q**bound


# --- exact-or-complex powers --------------------------------------------------


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def qpow(q: int, x):
    """q^x, as a Fraction when x is an integer-valued rational, else complex."""
    if _is_exact(x) and Fraction(x).denominator == 1:
        return Fraction(q) ** int(x)
    return cmath.exp(complex(x) * math.log(q))


def local_density(v: Place, s, method: str = "closed"):
    """h_v(0; s) at a finite place.

    closed: 1 + sum_{m=1}^{p-1} q_v^(-ms)
    bruteforce: q_v^-(p-1) * sum over residue classes of q_v^(-m(s-1))
    """
    if v.is_infinity:
        raise ValueError("local density is computed at finite places")
    p, q_v = v.field.p, v.q_v
    if method == "closed":
        return 1 + sum(qpow(q_v, -m * s) for m in range(1, p))
    if method == "bruteforce":
        total = sum(qpow(q_v, -m * (s - 1)) for m in _exponents(v))
        return qpow(q_v, -(p - 1)) * total
    if method == "denef":
        return denef_general(wound_stratum_data(valuation_histogram(v)), s)
    raise ValueError(f"unknown method {method!r}")


# --- general Denef evaluator ---------------------------------------------------


@dataclass(frozen=True)
class IndexData:
    rho: int | Fraction
    nonreduced: bool = False
    # residue degree of the component's field of constants; carried as data,
    # it does not enter the formula at good places
    ext_degree: int = 1


@dataclass(frozen=True)
class Stratum:
    """A stratum D°_A.

    For A disjoint from the non-reduced indices, ``count`` is #D°_A(F_v).
    Otherwise ``histogram`` maps exponent vectors (beta(x) for the non-reduced
    indices of A, in sorted order) to the number of residue classes.
    """

    A: frozenset
    count: int | None = None
    histogram: Mapping[tuple, int] | None = None


@dataclass
class StratumData:
    q_v: int
    dim: int
    indices: dict
    strata: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not any(not st.A for st in self.strata):
            raise ValueError("the empty stratum must be present")
        B = self.nonreduced
        for st in self.strata:
            unknown = set(st.A) - set(self.indices)
            if unknown:
                raise ValueError(f"stratum uses undeclared indices {sorted(unknown)}")
            if set(st.A) & B:
                if st.histogram is None:
                    raise ValueError(f"stratum {set(st.A)} meets non-reduced indices and needs a histogram")
                if any(n < 0 for n in st.histogram.values()):
                    raise ValueError("negative histogram count")
            elif st.count is None or st.count < 0:
                raise ValueError(f"stratum {set(st.A)} needs a non-negative count")

    @property
    def nonreduced(self) -> set:
        return {a for a, d in self.indices.items() if d.nonreduced}


def denef_general(data: StratumData, s):
    """q_v^-dim X * sum_A prod_{a in A \\ B} (q_v-1)/(q_v^(1+s_a-rho_a)-1)
    * sum_{x in D°_A} prod_{b in A ∩ B} q_v^(beta(x)(rho_b - s_b)).

    ``s`` is one value for every index or a mapping index -> value.  The result
    is an exact Fraction when every s_a - rho_a is an integer.
    """
    q = data.q_v
    s_of = s if isinstance(s, Mapping) else {a: s for a in data.indices}
    B = data.nonreduced
    total = 0
    for st in data.strata:
        term = 1
        for a in sorted(set(st.A) - B, key=str):
            rho = data.indices[a].rho
            den = qpow(q, 1 + s_of[a] - rho) - 1
            if den == 0:
                raise PoleError(f"geometric factor for index {a!r} has a pole at s = {s_of[a]}")
            term = term * Fraction(q - 1) / den if _is_exact(den) else term * (q - 1) / den
        AB = sorted(set(st.A) & B, key=str)
        if AB:
            inner = 0
            for betas, n in st.histogram.items():
                w = n
                for b, e in zip(AB, betas):
                    w = w * qpow(q, e * (data.indices[b].rho - s_of[b]))
                inner = inner + w
        else:
            inner = st.count
        total = total + term * inner
    return qpow(q, -data.dim) * total


def wound_stratum_data(hist: ValuationHistogram) -> StratumData:
    """The compactification P^{p-1} of G at a finite place: one non-reduced
    boundary index 'beta' with rho = 1, open stratum = classes with m = 0."""
    p = hist.place.field.p
    return StratumData(
        q_v=hist.place.q_v,
        dim=p - 1,
        indices={"beta": IndexData(rho=1, nonreduced=True)},
        strata=[
            Stratum(frozenset(), count=hist.counts[0]),
            Stratum(frozenset({"beta"}), histogram={(m,): hist.counts[m] for m in range(1, p)}),
        ],
    )


def wound_stratum_data_formula(q_v: int, p: int) -> StratumData:
    counts = ValuationHistogram.expected(q_v, p)
    return StratumData(
        q_v=q_v,
        dim=p - 1,
        indices={"beta": IndexData(rho=1, nonreduced=True)},
        strata=[
            Stratum(frozenset(), count=counts[0]),
            Stratum(frozenset({"beta"}), histogram={(m,): counts[m] for m in range(1, p)}),
        ],
    )


def projective_line_stratum_data(q_v: int) -> StratumData:
    """X = P^1 compactifying G_a, boundary the reduced point at infinity, rho = 2."""
    return StratumData(
        q_v=q_v,
        dim=1,
        indices={"alpha": IndexData(rho=2)},
        strata=[Stratum(frozenset(), count=q_v), Stratum(frozenset({"alpha"}), count=1)],
    )


# --- volume at infinity and the leading constant ------------------------------


def infinite_local_volume(p: int, q: int) -> Fraction:
    """Haar volume of G(F_inf), summed over residue classes of P^{p-1}(F_q).

    A class (*, ..., *, 1, 0, ..., 0) with its last nonzero entry at index j
    lies in the chart X_j != 0 with volume q^-(p-1) there.  On it
    |f_j|_inf = |f|_inf = q^(deg f) for the constant lift, which is q^j.
    """
    from .gf import field_for

    F = field_for(p, q)
    total = Fraction(0)
    cell = Fraction(1, q ** (p - 1))
    for j in range(p):
        for head in itertools.product(range(q), repeat=j):
            coords = tuple((c,) if c else () for c in head) + ((1,),) + ((),) * (p - 1 - j)
            deg_f = len(norm_tuple(F, coords)) - 1
            total += cell / Fraction(q) ** deg_f
    return total


def infinite_local_volume_closed(p: int, q: int) -> Fraction:
    return Fraction(p, q ** (p - 1))


@dataclass(frozen=True)
class ConstantReport:
    p: int
    q: int
    D: int
    residue: float
    q_power: int
    C_inf: Fraction
    alpha_star: Fraction
    tau_G: int
    finite_product: float
    finite_product_tail: float
    assembled: float
    closed_form: float
    tail_bound: float

    @property
    def gap(self) -> float:
        return abs(self.assembled - self.closed_form)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "truncation_degree": self.D,
            "zeta_residue": self.residue,
            "q_power": self.q_power,
            "C_inf": float(self.C_inf),
            "C_inf_exact": str(self.C_inf),
            "alpha_star": str(self.alpha_star),
            "tau_G": self.tau_G,
            "finite_product": self.finite_product,
            "finite_product_tail": self.finite_product_tail,
            "c_rho_assembled": self.assembled,
            "c_rho_closed_form": self.closed_form,
            "c_rho_log_q": self.assembled * math.log(self.q),
            "gap": self.gap,
            "tail_bound": self.tail_bound,
        }


def finite_factor(v: Place) -> Fraction:
    """C_v = (1 - 1/q_v) * h_v(0; 1), exactly."""
    return (1 - Fraction(1, v.q_v)) * local_density(v, 1, "closed")


def leading_constant(field: Field, D: int, by_degree: bool = True) -> ConstantReport:
    """c_rho = alpha* * q^(p-1) * res zeta_F * C_inf * prod_{v finite, deg <= D} C_v."""
    p, q = field.p, field.q
    residue = zeta_residue(field)
    C_inf = (1 - Fraction(1, q)) * infinite_local_volume(p, q)
    alpha_star = Fraction(1, p)
    # |C_v - 1| = q_v^-p
    prod: EulerProductReport = euler_product(finite_factor, field, D, delta=p - 1, by_degree=by_degree)
    prefactor = float(alpha_star) * q ** (p - 1) * residue * float(C_inf)
    assembled = prefactor * prod.value.real
    closed = (1 - q ** (1 - p)) / math.log(q)
    return ConstantReport(
        p=p,
        q=q,
        D=D,
        residue=residue,
        q_power=q ** (p - 1),
        C_inf=C_inf,
        alpha_star=alpha_star,
        tau_G=int(q ** (p - 1) * infinite_local_volume(p, q)),
        finite_product=prod.value.real,
        finite_product_tail=prod.tail_bound,
        assembled=assembled,
        closed_form=closed,
        tail_bound=prefactor * prod.tail_bound,
    )


def closed_form_constant(p: int, q: int) -> float:
    return (1 - q ** (1 - p)) / math.log(q)
