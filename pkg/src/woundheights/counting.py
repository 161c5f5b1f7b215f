"""Exact-height point counts on G and partial height zeta sums.

Work is split into blocks, one per degree vector (deg x_0, ..., deg x_{p-1});
a block is a Cartesian product of coefficient ranges, so blocks can be
counted independently and their counts summed in any order.
"""

from __future__ import annotations

import cmath
import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import BudgetExceeded
from .gf import Field
from .polyfield import pgcd_many, polys_of_degree
from .wound import GroupPoint, norm_tuple

STRUCTURED = "structured"
NAIVE = "naive"


# --- degree-vector blocks -----------------------------------------------------


def _structured_blocks(p: int, M: int):
    """Degree vectors allowed when deg f = M: x_j has degree exactly (M-j)/p for
    j = M mod p, and x_i has degree <= (M-i)//p otherwise (-1 means zero)."""
    j = M % p
    ranges = []
    for i in range(p):
        if i == j:
            ranges.append([(M - j) // p])
        else:
            top = (M - i) // p if M >= i else -1
            ranges.append(list(range(-1, top + 1)))
    return list(itertools.product(*ranges))


def _naive_blocks(p: int, M: int):
    """Every degree vector in the box deg x_i <= M // p, except all-zero."""
    top = M // p
    return [dv for dv in itertools.product(range(-1, top + 1), repeat=p) if max(dv) >= 0]


def block_size(q: int, degs) -> int:
    """Number of canonical tuples with the given degree vector (first nonzero monic)."""
    size = 1
    first = True
    for d in degs:
        if d < 0:
            continue
        size *= q**d if first else (q - 1) * q**d
        first = False
    return size


def _coordinate_choices(field: Field, degs):
    out = []
    first = True
    for d in degs:
        if d < 0:
            out.append([()])
        else:
            out.append(list(polys_of_degree(field, d, monic=first)))
            first = False
    return out


def _run_block(task):
    field, M, degs, method, collect = task
    count = 0
    points = []
    for coords in itertools.product(*_coordinate_choices(field, degs)):
        if method == NAIVE:
            # no degree formula: build f and look at it
            f = norm_tuple(field, coords)
            if len(f) - 1 != M:
                continue
        if pgcd_many(field, coords) != (1,):
            continue
        count += 1
        if collect:
            points.append(coords)
    return count, points


def _blocks(field: Field, M: int, method: str):
    if M < 0:
        raise ValueError(f"M must be non-negative, got {M}")
    if method == STRUCTURED:
        return _structured_blocks(field.p, M)
    if method == NAIVE:
        return _naive_blocks(field.p, M)
    raise ValueError(f"unknown method {method!r}")


def _map(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [_run_block(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_block, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def enumerate_points(field: Field, M: int, method: str = STRUCTURED, workers: int = 1) -> list[GroupPoint]:
    """All canonical points with H(x) = q^M, sorted by coordinate codes."""
    tasks = [(field, M, degs, method, True) for degs in _blocks(field, M, method)]
    out = []
    for _, pts in _map(tasks, workers):
        out.extend(GroupPoint._trusted(field, c) for c in pts)
    out.sort(key=GroupPoint.sort_key)
    return out


def enumeration_cost(field: Field, M: int, method: str = STRUCTURED) -> int:
    """Number of tuples the enumeration of height q^M will visit."""
    return sum(block_size(field.q, degs) for degs in _blocks(field, M, method))


def count_points(field: Field, M: int, workers: int = 1) -> int:
    tasks = [(field, M, degs, STRUCTURED, False) for degs in _blocks(field, M, STRUCTURED)]
    return sum(c for c, _ in _map(tasks, workers))


def count_points_naive(field: Field, M: int, workers: int = 1) -> int:
    tasks = [(field, M, degs, NAIVE, False) for degs in _blocks(field, M, NAIVE)]
    return sum(c for c, _ in _map(tasks, workers))


# --- count tables ---------------------------------------------------------------


@dataclass
class CountTable:
    p: int
    q: int
    rows: list[tuple[int, int]] = dc_field(default_factory=list)
    method: str = STRUCTURED

    def __post_init__(self):
        for M, N in self.rows:
            if N < 0:
                raise ValueError(f"negative count N({M}) = {N}")
            if M == 0 and N != 1:
                raise ValueError(f"N(0) must be 1, got {N}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.rows)

    def __getitem__(self, M: int) -> int:
        for m, n in self.rows:
            if m == M:
                return n
        raise KeyError(M)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["M", "N", "method"])
        for M, N in self.rows:
            w.writerow([M, N, self.method])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "method": self.method,
            "rows": [{"M": M, "N": N} for M, N in self.rows],
        }

    @classmethod
    def from_csv(cls, text: str, p: int, q: int) -> CountTable:
        rows, method = [], STRUCTURED
        for rec in csv.DictReader(io.StringIO(text)):
            rows.append((int(rec["M"]), int(rec["N"])))
            method = rec["method"]
        return cls(p, q, rows, method)

    @classmethod
    def from_json(cls, data) -> CountTable:
        if isinstance(data, str):
            data = json.loads(data)
        rows = [(r["M"], r["N"]) for r in data["rows"]]
        return cls(data["p"], data["q"], rows, data["method"])


def count_table(
    field: Field,
    Ms,
    method: str = STRUCTURED,
    workers: int = 1,
    budget: int | None = None,
) -> CountTable:
    """Counts for each M in Ms.

    With a budget (in enumerated tuples), heights are processed in the order
    given and BudgetExceeded is raised, carrying the rows finished so far, as
    soon as the next height would push the total over.  The check uses the
    exact block sizes, so it does not depend on the worker count.
    """
    Ms = list(Ms)
    table = CountTable(field.p, field.q, [], method)
    used = 0
    for M in Ms:
        blocks = _blocks(field, M, method)
        cost = sum(block_size(field.q, degs) for degs in blocks)
        if budget is not None and used + cost > budget:
            raise BudgetExceeded(
                f"budget of {budget} tuples exhausted before M = {M} (needs {cost}, used {used})",
                partial=table,
                used=used,
                budget=budget,
            )
        used += cost
        tasks = [(field, M, degs, method, False) for degs in blocks]
        table.rows.append((M, sum(c for c, _ in _map(tasks, workers))))
    return table


def rescale_table(table: CountTable, k: int) -> CountTable:
    """Counts for the height H^k (line bundle k*rho): N_k(kM) = N(M), zero off multiples of k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    counts = table.as_dict()
    lo, hi = min(counts), max(counts)
    rows = []
    for M in range(k * lo, k * hi + 1):
        if M % k == 0:
            rows.append((M, counts[M // k]))
        else:
            rows.append((M, 0))
    return CountTable(table.p, table.q, rows, table.method)


def averaged_count(table: CountTable, a, d: int, M: int) -> float:
    """N_av(M) = (1/d) sum_{j<d} q^(-a j) N(M + j)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    a = Fraction(a)
    q = table.q
    counts = table.as_dict()
    total = 0.0
    for j in range(d):
        if M + j not in counts:
            raise KeyError(f"table has no row for M = {M + j}")
        total += counts[M + j] * q ** (-float(a) * j)
    return total / d


@dataclass(frozen=True)
class ZetaPartial:
    s: complex
    M_max: int
    value: complex

    def to_json(self) -> dict:
        return {
            "s_re": self.s.real,
            "s_im": self.s.imag,
            "M_max": self.M_max,
            "value_re": self.value.real,
            "value_im": self.value.imag,
        }


def zeta_partial(table: CountTable, s: complex, M_max: int | None = None) -> ZetaPartial:
    """sum_{M <= M_max} N(M) q^(-sM)."""
    s = complex(s)
    if M_max is None:
        M_max = max(M for M, _ in table.rows)
    z = cmath.exp(-s * math.log(table.q))
    value = 0j
    for M, N in table.rows:
        if M <= M_max:
            value += N * z**M
    return ZetaPartial(s, M_max, value)


def empirical_constant(table: CountTable, M_lo: int, M_hi: int) -> float:
    """Mean of N(M) / q^M over the window; estimates c * log q for the ρ-height."""
    counts = table.as_dict()
    vals = [counts[M] / table.q**M for M in range(M_lo, M_hi + 1)]
    return sum(vals) / len(vals)
