"""Command-line entry point: ``smoothsum <command> [options]``.

Exit codes: 0 ok, 1 invalid arguments, 2 resource cap hit, 3 no result
within the given limit or budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bounds, carmichael, obstruction, repr_exact, repr_signed, smooth
from .errors import BudgetExceededError, ResourceLimitError

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_ABSENT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Absent(Exception):
    """No result within the limits; carries the partial payload."""

    def __init__(self, payload, text):
        super().__init__(text)
        self.payload, self.text = payload, text


def _ints(s):
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _primes(s):
    try:
        return smooth.make_prime_set(_ints(s))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _big(s):
    # accepts 10**12 / 1e12 style as well as plain integers
    try:
        if "**" in s:
            b, e = s.split("**")
            return int(b) ** int(e)
        if "e" in s.lower():
            return int(float(s))
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")


def _sn(x):
    return {"value": x.value, "exponents": list(x.exponents)}


# Each handler returns (json payload, text, csv rows or None).

def cmd_enumerate(a):
    xs = smooth.enumerate_smooth(a.primes, a.limit)
    rows = [["value"] + [f"e{p}" for p in a.primes]] + [[x.value, *x.exponents] for x in xs]
    payload = {"schema": "smoothsum/enumerate/v1", "P": list(a.primes.primes), "limit": a.limit,
               "elements": [_sn(x) for x in xs]}
    return payload, " ".join(str(x.value) for x in xs), rows


def cmd_min_terms(a):
    table = repr_exact.build_min_terms(a.primes, a.limit, a.term_cap)
    if a.out:
        repr_exact.write_table(table, a.out, a.summary)
    F = {k: table.first_exceeding(k) for k in range(1, min(a.k_max, a.term_cap) + 1)}
    payload = {"schema": "smoothsum/min-terms/v1", "P": list(a.primes.primes), "N": a.limit,
               "term_cap": a.term_cap, "F": {str(k): v for k, v in F.items()}}
    lines = [f"F({k}) = {v if v is not None else f'> {a.limit}'}" for k, v in F.items()]
    if a.n is not None:
        if not 1 <= a.n <= a.limit:
            raise ValueError("--n must lie in [1, limit]")
        v = table[a.n]
        payload["n"] = a.n
        payload["min_terms"] = None if v == repr_exact.UNREACHABLE else v
        lines.insert(0, f"min_terms({a.n}) = {payload['min_terms']}")
    rows = [["k", "F"]] + [[k, v] for k, v in F.items()]
    return payload, "\n".join(lines), rows


def cmd_f(a):
    k = a.k - 1 if a.convention == "less-than" else a.k
    payload = {"schema": "smoothsum/f/v1", "P": list(a.primes.primes), "k": a.k,
               "convention": a.convention, "limit": a.limit}
    if k == 0:
        payload["F"] = 1
        return payload, "1", None
    v = repr_exact.f_of_k(a.primes, k, a.limit)
    payload["F"] = v
    if v is None:
        raise Absent(payload, f"F({a.k}) > {a.limit}")
    return payload, str(v), [["k", "F"], [a.k, v]]


def cmd_f_signed(a):
    B = a.bound if a.bound is not None else a.limit**2
    res = repr_signed.f_pm_of_k(a.primes, a.k, a.limit, B, frontier_cap=a.frontier_cap)
    payload = {"schema": "smoothsum/f-signed/v1", "P": list(a.primes.primes), "k": a.k,
               "limit": a.limit, "B": B, "F_pm": res.value, "certified": res.certified}
    if res.value is None:
        raise Absent(payload, f"F_pm({a.k}) > {a.limit}")
    text = f"{res.value}" + ("" if res.certified else " (uncertified: B < limit^2)")
    return payload, text, [["k", "F_pm", "certified"], [a.k, res.value, res.certified]]


def cmd_signed_search(a):
    B = a.bound if a.bound is not None else max(a.n * a.n, abs(a.n))
    res = repr_signed.min_terms_signed(a.primes, a.n, B, a.length_cap, a.frontier_cap)
    payload = res.to_json()
    if res.length is None:
        raise Absent(payload, f"no representation of {a.n} with <= {a.length_cap} terms")
    text = f"{a.n} = " + " ".join(f"{'+' if t.sign > 0 else '-'}{t.term.value}" for t in res.terms)
    text += f"  (length {res.length}{', certified' if res.certified else ''})"
    return payload, text, [["sign", "value"]] + [[t.sign, t.term.value] for t in res.terms]


def cmd_greedy(a):
    terms = smooth.greedy_decompose(a.primes, a.n)
    payload = {"schema": "smoothsum/greedy/v1", "P": list(a.primes.primes), "n": a.n,
               "length": len(terms), "terms": [_sn(x) for x in terms]}
    return payload, " ".join(str(x.value) for x in terms), [["value"]] + [[x.value] for x in terms]


def cmd_gaps(a):
    recs, s = smooth.gap_statistics(a.primes, a.lo, a.hi, a.stride, a.workers,
                                    records=a.records)
    payload = {"schema": "smoothsum/gaps/v1", "P": list(a.primes.primes),
               "summary": s.__dict__}
    if a.records:
        payload["records"] = [r.__dict__ for r in recs]
    text = (f"samples={s.count} max_gap={s.max_gap} at n={s.max_gap_at} "
            f"max_gap/n={s.max_relative_gap:.6g} at n={s.max_relative_gap_at}")
    rows = [["n", "predecessor", "gap"]] + ([[r.n, r.predecessor, r.gap] for r in recs]
                                           if a.records else [])
    return payload, text, rows


def cmd_lambda(a):
    fac = carmichael.factorize(a.m)
    lam = carmichael.lambda_from_factors(fac.factors)
    payload = {"schema": "smoothsum/lambda/v1", "m": a.m, "lambda": lam,
               "factors": [list(f) for f in fac.factors]}
    return payload, str(lam), [["m", "lambda"], [a.m, lam]]


def _lambda_payload(res, kind):
    return {"schema": f"smoothsum/{kind}/v1", "m": str(res.m), "lambda": res.lam,
            "window_low": res.window_low, "window_high": res.window_high,
            "L": res.smooth_exponent_L, "primes": [q for q, _ in res.factors],
            "log10_m": len(str(res.m)) - 1}


def cmd_eps_construct(a):
    res = carmichael.eps_construct(a.y)
    payload = _lambda_payload(res, "eps-construct")
    text = f"L={res.smooth_exponent_L} lambda(m)={res.lam} m={res.m}"
    return payload, text, None


def cmd_lambda_window(a):
    res = carmichael.find_small_lambda_window(a.i, a.C3, a.C4, a.budget)
    if res is None:
        raise Absent({"schema": "smoothsum/lambda-window/v1", "i": a.i, "found": False},
                     "no modulus found within budget")
    payload = _lambda_payload(res, "lambda-window")
    return payload, f"m={res.m} lambda(m)={res.lam}", None


def cmd_coverage(a):
    cov = obstruction.sumset_coverage(a.primes, a.k, a.m, a.signed)
    payload = {"schema": "smoothsum/coverage/v1", "P": list(a.primes.primes), "k": a.k,
               "m": a.m, "signed": a.signed, "size": len(cov), "missing": cov.missing(),
               "source_residue_set_sizes": {str(p): s for p, s in
                                            cov.source_residue_set_sizes.items()}}
    text = f"{len(cov)}/{a.m} residues covered"
    if a.bound_check:
        rep = obstruction.coverage_bound_check(a.primes, a.k, a.m, a.signed, cov)
        payload["bound_check"] = rep.__dict__
        text += (f"; lambda={rep.lam} max_alpha={rep.max_alpha} "
                 f"bound {'holds' if rep.bound_holds else 'VIOLATED'}")
    return payload, text, [["residue", "covered"]] + [[r, r in cov] for r in range(a.m)]


def cmd_certify(a):
    cert = obstruction.find_obstruction(a.primes, a.k, a.budget, a.max_modulus)
    if cert is None:
        raise Absent({"schema": "smoothsum/certificate/v1", "found": False},
                     "no obstruction within budget")
    if a.verify:
        cert = obstruction.verify_certificate(cert, a.bound)
    return cert.to_json(), f"m={cert.m} r={cert.residue} => {cert.implied_bound}", None


def cmd_bounds(a):
    consts = {"c": a.c, "C": a.C, "C_pm": a.C_pm}
    if a.empirical:
        payload = bounds.empirical_report(a.primes, a.k, a.limit, a.eps, consts,
                                          signed_k_max=a.signed_k_max)
        lines = [f"F = {payload['F']}",
                 f"F_pm = {payload['F_pm']}",
                 f"fitted c(k) = {payload['fitted_c']}",
                 "NOTE: " + bounds.LIMITATION]
        return payload, "\n".join(lines), None
    rep = bounds.eval_bounds(a.k, a.t, a.eps, consts)
    lines = [f"{e.name}: log bound = {e.log_bound:.12g}" for e in rep.entries]
    lines.append("NOTE: " + rep.limitation)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    return rep.to_json(), "\n".join(lines), rows


def cmd_sieve_count(a):
    r = bounds.sieve_count_coprime(a.primes, a.N)
    payload = {"schema": "smoothsum/sieve-count/v1", "P": list(a.primes.primes), **r}
    text = f"count={r['count']} crude_bound={r['crude_bound']:g} holds={r['holds']}"
    return payload, text, [list(r), list(r.values())]


def cmd_evertse_check(a):
    tup = repr_signed.EvertseTuple(tuple(a.entries), tuple(a.S0), Fraction(a.c), Fraction(a.d))
    v = repr_signed.check_evertse_conditions(tup)
    text = (f"zero_sum={v.zero_sum} no_vanishing_subsum={v.no_vanishing_subsum} "
            f"coprime={v.coprime} height_bound={v.height_bound}")
    return v.to_json(), text, None


def build_parser():
    p = _Parser(prog="smoothsum", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--workers", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, primes=True):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        if primes:
            sp.add_argument("--primes", type=_primes, default="2,3")
        return sp

    sp = add("enumerate", cmd_enumerate)
    sp.add_argument("--limit", type=_big, required=True)

    sp = add("min-terms", cmd_min_terms)
    sp.add_argument("--limit", type=_big, required=True)
    sp.add_argument("--term-cap", type=int, default=repr_exact.DEFAULT_TERM_CAP)
    sp.add_argument("--k-max", type=int, default=8)
    sp.add_argument("--n", type=int)
    sp.add_argument("--out", help="binary table file")
    sp.add_argument("--summary", help="JSON summary file (with --out)")

    sp = add("f", cmd_f)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--limit", type=_big, default=10**6)
    sp.add_argument("--convention", choices=["at-most", "less-than"], default="at-most",
                    help="'less-than' shifts k by one (F(k) = least n not a sum of < k terms)")

    sp = add("f-signed", cmd_f_signed)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--limit", type=_big, default=10**4)
    sp.add_argument("--bound", type=_big, help="term magnitude bound B (default limit^2)")
    sp.add_argument("--frontier-cap", type=_big, default=repr_signed.DEFAULT_FRONTIER_CAP)

    sp = add("signed-search", cmd_signed_search)
    sp.add_argument("--n", type=_big, required=True)
    sp.add_argument("--bound", type=_big)
    sp.add_argument("--length-cap", type=int, default=4)
    sp.add_argument("--frontier-cap", type=_big, default=repr_signed.DEFAULT_FRONTIER_CAP)

    sp = add("greedy", cmd_greedy)
    sp.add_argument("--n", type=_big, required=True)

    sp = add("gaps", cmd_gaps)
    sp.add_argument("--lo", type=_big, required=True)
    sp.add_argument("--hi", type=_big, required=True)
    sp.add_argument("--stride", type=int, default=1)
    sp.add_argument("--records", action="store_true")

    sp = add("lambda", cmd_lambda, primes=False)
    sp.add_argument("--m", type=_big, required=True)

    sp = add("eps-construct", cmd_eps_construct, primes=False)
    sp.add_argument("--y", type=int, required=True)

    sp = add("lambda-window", cmd_lambda_window, primes=False)
    sp.add_argument("--i", type=_big, required=True)
    sp.add_argument("--C3", type=float, default=3.0)
    sp.add_argument("--C4", type=float, default=3.0)
    sp.add_argument("--budget", type=int, default=20000)

    sp = add("coverage", cmd_coverage)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--signed", action="store_true")
    sp.add_argument("--bound-check", action="store_true")

    sp = add("certify", cmd_certify)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=500)
    sp.add_argument("--max-modulus", type=_big, default=10**6)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--bound", type=_big)

    sp = add("bounds", cmd_bounds)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--eps", type=float, default=1.0)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--C", type=float, default=1.0)
    sp.add_argument("--C-pm", dest="C_pm", type=float, default=1.0)
    sp.add_argument("--empirical", action="store_true",
                    help="compute F and F_pm up to --limit and compare (k = k_max)")
    sp.add_argument("--limit", type=_big, default=10**4)
    sp.add_argument("--signed-k-max", type=int, default=3)

    sp = add("sieve-count", cmd_sieve_count)
    sp.add_argument("--N", type=_big, required=True)

    sp = add("evertse-check", cmd_evertse_check, primes=False)
    sp.add_argument("--entries", type=_ints, required=True)
    sp.add_argument("--S0", type=_ints, default=[2, 3])
    sp.add_argument("--c", default="1")
    sp.add_argument("--d", default="1/2")
    return p


def _emit(fmt, payload, text, rows, out):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv" and rows is not None:
        csv.writer(out, lineterminator="\n").writerows(rows)
    else:
        out.write(text + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("smoothsum: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, text, rows = args.fn(args)
    except Absent as e:
        _emit(args.format, e.payload, e.text, None, out)
        return EXIT_ABSENT
    except BudgetExceededError as e:
        print(f"smoothsum: {e}", file=sys.stderr)
        return EXIT_ABSENT
    except (ResourceLimitError, OverflowError, MemoryError) as e:
        print(f"smoothsum: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as e:
        print(f"smoothsum: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args.format, payload, text, rows, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
