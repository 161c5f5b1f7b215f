"""Command-line entry point.

Every subcommand prints its report to stdout in the chosen format; with
``--out DIR`` it also writes ``<command>.csv`` and ``<command>.json`` there.
Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .errors import BudgetExceeded
from .gf import field_for, is_prime

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- argument parsing helpers --------------------------------------------------


def parse_range(text: str) -> list[int]:
    """'3' -> [3], '0..4' -> [0, 1, 2, 3, 4]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def parse_complex_list(text: str) -> list[complex]:
    try:
        return [complex(x.replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad complex value in {text!r}") from None


def parse_poly(field, text: str):
    """'t^2+t+1', '2*t+1', or low-first coefficient codes '1,1,1'."""
    from .polyfield import Polynomial

    text = text.replace(" ", "")
    if "t" not in text:
        try:
            return Polynomial(field, [int(c) for c in text.split(",")])
        except ValueError as exc:
            raise UsageError(f"bad polynomial {text!r}: {exc}") from None
    coeffs: dict[int, int] = {}
    for term in text.replace("-", "+-").split("+"):
        if not term:
            continue
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        if "t" in term:
            c, _, power = term.partition("t")
            c = c.rstrip("*") or "1"
            k = int(power.lstrip("^")) if power else 1
        else:
            c, k = term, 0
        try:
            coeffs[k] = coeffs.get(k, 0) + sign * int(c)
        except ValueError:
            raise UsageError(f"bad term {term!r}") from None
    top = max(coeffs)
    return Polynomial(field, [coeffs.get(k, 0) % field.p for k in range(top + 1)])


def _field(args):
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required")
    if not is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    try:
        return field_for(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- subcommands: each returns (json_obj, csv_text, exit_code) -----------------


def cmd_places(args):
    from .polyfield import places_up_to

    F = _field(args)
    D = args.trunc if args.trunc is not None else 1
    if D < 1:
        raise UsageError("--trunc must be >= 1")
    places = places_up_to(F, D)
    rows = [("inf" if v.is_infinity else "finite", v.degree, v.q_v, repr(v)) for v in places]
    obj = {"field": F.to_json(), "D": D, "places": [v.to_json() for v in places]}
    return obj, _rows_to_csv(["kind", "degree", "q_v", "pi"], rows), EXIT_OK


def cmd_count(args):
    from .counting import NAIVE, STRUCTURED, count_table, zeta_partial

    F = _field(args)
    Ms = parse_range(args.m or "0..6")
    method = NAIVE if args.naive else STRUCTURED
    status = EXIT_OK
    note = None
    try:
        table = count_table(F, Ms, method=method, workers=args.workers, budget=args.budget)
    except BudgetExceeded as exc:
        table, status, note = exc.partial, EXIT_BUDGET, str(exc)
    obj = table.to_json()
    if args.check_naive and status == EXIT_OK:
        naive = count_table(F, Ms, method=NAIVE, workers=args.workers)
        obj["naive_agrees"] = naive.rows == table.rows
        if not obj["naive_agrees"]:
            status = EXIT_VERIFY
    if args.s:
        obj["zeta_partial"] = [zeta_partial(table, s).to_json() for s in parse_complex_list(args.s)]
    if note:
        obj["budget_exceeded"] = note
    return obj, table.to_csv(), status


def _selected_places(args, F):
    from .polyfield import Place, is_irreducible, places_up_to

    if args.place:
        f = parse_poly(F, args.place)
        if f.degree < 1 or not f.is_monic() or not is_irreducible(f):
            raise UsageError(f"--place {args.place!r} is not a monic irreducible")
        return [Place(F, f.c)]
    D = args.trunc if args.trunc is not None else 1
    return places_up_to(F, D)[1:]


def cmd_density(args):
    from .denef import local_density, valuation_histogram

    F = _field(args)
    places = _selected_places(args, F)
    s_values = parse_complex_list(args.s) if args.s else [complex(1)]
    cost = sum((v.q_v ** F.p - 1) // (v.q_v - 1) for v in places)
    if args.budget is not None and cost > args.budget:
        obj = {"budget_exceeded": f"{cost} residue classes needed, budget {args.budget}", "places": []}
        return obj, _rows_to_csv(["place", "s_re", "s_im", "closed_re", "closed_im", "brute_re", "brute_im"], []), EXIT_BUDGET
    out, rows = [], []
    for v in places:
        h = valuation_histogram(v)
        entry = {"histogram": h.to_json(), "matches_formula": h.matches_expected(), "densities": []}
        for s in s_values:
            a = complex(local_density(v, s, "closed"))
            b = complex(local_density(v, s, "bruteforce"))
            entry["densities"].append(
                {"s_re": s.real, "s_im": s.imag, "closed_re": a.real, "closed_im": a.imag,
                 "bruteforce_re": b.real, "bruteforce_im": b.imag}
            )
            rows.append((repr(v), s.real, s.imag, a.real, a.imag, b.real, b.imag))
        out.append(entry)
    obj = {"field": F.to_json(), "places": out}
    csv_text = _rows_to_csv(["place", "s_re", "s_im", "closed_re", "closed_im", "brute_re", "brute_im"], rows)
    ok = all(e["matches_formula"] for e in out)
    return obj, csv_text, EXIT_OK if ok else EXIT_VERIFY


def cmd_constant(args):
    from .denef import leading_constant

    F = _field(args)
    D = args.trunc if args.trunc is not None else 12
    if D < 1:
        raise UsageError("--trunc must be >= 1")
    r = leading_constant(F, D)
    obj = r.to_json()
    rows = [(k, v) for k, v in obj.items()]
    return obj, _rows_to_csv(["factor", "value"], rows), EXIT_OK


def cmd_poles(args):
    from .counting import count_table, rescale_table
    from .denef import closed_form_constant
    from .poles import BundleClass, averaged_asymptotic, pole_structure, tauberian_predict

    F = _field(args)
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --lam {args.lam!r}") from None
    try:
        cls = BundleClass({"beta": lam}, {"beta": 1}, F.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ps = pole_structure(cls, F.q)
    obj = {"pole_structure": ps.to_json()}
    rows = []
    if args.m and lam.denominator == 1:
        # c_lambda for lambda = k rho is c_rho / k; every residue on the pole line equals it
        k = lam.numerator
        c = closed_form_constant(F.p, F.q) / k
        Ms = parse_range(args.m)
        base = count_table(F, range(0, max(Ms) // k + 2), workers=args.workers, budget=args.budget)
        table = rescale_table(base, k).as_dict()
        n_res = math.ceil(ps.d)
        for M in Ms:
            pred = tauberian_predict(ps.a, ps.b, ps.d, [c] * n_res, F.q, M)
            avg = averaged_asymptotic(c, ps.a, ps.b, ps.d, F.q, M)
            rows.append((M, table.get(M), pred, avg))
        obj["predictions"] = [{"M": M, "N": N, "tauberian": t, "averaged_asymptotic": a} for M, N, t, a in rows]
    return obj, _rows_to_csv(["M", "N", "tauberian", "averaged_asymptotic"], rows), EXIT_OK


def cmd_charsum(args):
    from .charsum import LaurentTruncation, lemma_table, lemma_value, unit_character_sum

    if args.qv is None:
        raise UsageError("--qv is required")
    qv = args.qv
    p = next((r for r in range(2, qv + 1) if qv % r == 0), None)
    if p is None:
        raise UsageError(f"--qv {qv} is not a prime power")
    try:
        F = field_for(p, qv)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n is not None and args.d is not None:
        if args.n < 1 or args.d < 0:
            raise UsageError("need --n >= 1 and --d >= 0")
        res = unit_character_sum(LaurentTruncation(F, 0, (1,)), args.n, args.d, e=args.e)
        entries = [(qv, args.n, args.d, res, lemma_value(qv, args.n, args.d))]
    else:
        entries = [r for r in lemma_table(q_values=(qv,))]
    out, rows = [], []
    for q_v, n, d, res, want in entries:
        item = res.to_json()
        item.update({"q_v": q_v, "n": n, "d": d, "expected": want if res.lemma_applies else None})
        out.append(item)
        rows.append((q_v, n, d, res.value.real, res.value.imag, res.e, res.stabilized))
    csv_text = _rows_to_csv(["q_v", "n", "d", "value_re", "value_im", "e", "stabilized"], rows)
    return {"rows": out}, csv_text, EXIT_OK


def cmd_verify_all(args):
    from .acceptance import run_all

    only = set(parse_range(args.only)) if args.only else None
    results = run_all(only)
    for r in results:
        print(r.line(), file=sys.stderr)
    obj = {"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    rows = [(r.number, r.name, "pass" if r.passed else "fail") for r in results]
    return obj, _rows_to_csv(["criterion", "name", "status"], rows), EXIT_OK if obj["passed"] else EXIT_VERIFY


COMMANDS = {
    "places": cmd_places,
    "count": cmd_count,
    "density": cmd_density,
    "constant": cmd_constant,
    "poles": cmd_poles,
    "charsum": cmd_charsum,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--q", type=int, help="size of the constant field (a power of p)")
    common.add_argument("--m", help="height exponent or range A..B")
    common.add_argument("--trunc", type=int, help="place-degree cutoff D")
    common.add_argument("--place", help="monic irreducible, e.g. 't^2+t+1' or '1,1,1'")
    common.add_argument("--s", help="comma-separated complex values, e.g. '1.5,2+1j'")
    common.add_argument("--budget", type=int, help="cap on enumerated tuples")
    common.add_argument("--workers", type=int, default=1, help="worker processes (output does not depend on it)")
    common.add_argument("--out", help="directory for <command>.csv and <command>.json")
    common.add_argument("--format", choices=("csv", "json"), default="json", help="stdout format")

    parser = argparse.ArgumentParser(prog="woundheights", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("places", parents=[common], help="list places of degree <= --trunc")
    c = sub.add_parser("count", parents=[common], help="exact-height point counts")
    c.add_argument("--naive", action="store_true", help="use the naive enumeration")
    c.add_argument("--check-naive", action="store_true", help="cross-check against the naive enumeration")
    sub.add_parser("density", parents=[common], help="valuation histograms and local densities")
    sub.add_parser("constant", parents=[common], help="leading-constant report")
    pl = sub.add_parser("poles", parents=[common], help="pole structure and predictions")
    pl.add_argument("--lam", default="1", help="lambda as a multiple of rho, e.g. 2 or 1/2")
    cs = sub.add_parser("charsum", parents=[common], help="unit character sums")
    cs.add_argument("--qv", type=int, help="residue field size")
    cs.add_argument("--n", type=int)
    cs.add_argument("--d", type=int)
    cs.add_argument("--e", type=int, help="precision (default n*d + 1)")
    va = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    va.add_argument("--only", help="criterion number or range, e.g. 1..4")
    return parser


def _render(obj, csv_text, fmt) -> str:
    if fmt == "csv":
        return csv_text
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on usage errors
    if args.workers < 1:
        parser.print_usage(sys.stderr)
        print("woundheights: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.budget is not None and args.budget < 1:
        parser.print_usage(sys.stderr)
        print("woundheights: error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        obj, csv_text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"woundheights: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(_render(obj, csv_text, args.format))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = args.command.replace("-", "_")
        (out / f"{stem}.csv").write_text(csv_text)
        (out / f"{stem}.json").write_text(_render(obj, csv_text, "json"))
    if status == EXIT_BUDGET:
        print("woundheights: budget exceeded; partial report written", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
