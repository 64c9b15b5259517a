"""Command-line surface: compute, verify, simulate, export.

Exit codes: 0 success, 1 usage error, 2 unreachable or degenerate
configuration, 3 verification discrepancy found (report still emitted).

Probabilities cross this boundary only as exact "a/b" strings; decimal
input is rejected so the exactness contract holds end to end.  Identical
invocations produce byte-identical output (simulation included, via the
seed).  The environment variable CAYHT_THREADS caps worker threads for
verification grids (0 = auto); results are merged in a fixed order either
way.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .graph import (
    FAMILY_TAGS,
    GraphFamily,
    GraphParameterError,
    PM1,
    PM1PM2,
    PLUS12,
    UnreachableVertexError,
    build_graph,
    pm1_alternating,
    pm1pm2_unweighted,
    plus12_unweighted,
    plus_one_two,
)
from .hitting import (
    IndexMap2n,
    build_H_plus12,
    build_H_pm1,
    closed_h_vector_pm1,
    ht_plus12_baseline,
    ht_plus12_closed,
    ht_pm1,
    ht_pm1_closed,
    ht_pm1pm2_baseline,
    oracle_hitting,
    pm1_reduce,
    plus12_reduce,
    solve_h_plus12,
    solve_h_vector_pm1,
)
from .montecarlo import SimConfig, StepCapExceededError, simulate_hit
from .numerics import DenseMatrix, compare, invert, mat_mul
from . import decomposition as dec
from .resistance import (
    kf_plus12_closed,
    kf_plus12_proof_sum,
    kf_pm1_closed,
    kirchhoff_from_hitting,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_DISCREPANCY = 3

RECORDS_SCHEMA = "cayht-records-v1"
ERRATA_SCHEMA = "cayht-errata-v1"

P_DEFAULT = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(3, 7), Fraction(2, 5))

CSV_COLUMNS = (
    "family",
    "sizeParam",
    "p",
    "q",
    "start",
    "target",
    "method",
    "valueNum",
    "valueDen",
    "valueFloat",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise UsageError(f"not an exact rational 'a/b': {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise UsageError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_rational_list(text: str) -> list:
    return [parse_rational(tok) for tok in text.split(",") if tok.strip()]


def parse_int_list(text: str) -> list:
    """Integer grid syntax: '4', '2,5,7', '2..8', or mixtures."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ".." in tok:
            lo, hi = tok.split("..", 1)
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise UsageError(f"bad range {tok!r}")
            if hi_i < lo_i:
                raise UsageError(f"empty range {tok!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise UsageError(f"bad integer {tok!r}")
    if not out:
        raise UsageError(f"no values in {text!r}")
    return sorted(set(out))


def rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def float15(x: Fraction) -> float:
    return float(format(float(x), ".15g"))


def _worker_count() -> int:
    raw = os.environ.get("CAYHT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"CAYHT_THREADS must be an integer, got {raw!r}")
    if value < 0:
        raise UsageError("CAYHT_THREADS must be >= 0")
    if value == 0:
        return os.cpu_count() or 1
    return value


def _map_jobs(fn, jobs):
    """Run grid jobs, possibly threaded; output order always matches input."""
    workers = _worker_count()
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------------------
# Output records
# ---------------------------------------------------------------------------


def make_record(family: GraphFamily, start, target, method, value: Fraction, extra=None) -> dict:
    rec = {
        "family": family.tag,
        "sizeParam": family.size,
        "p": rat_str(family.p),
        "q": rat_str(family.q),
        "start": start,
        "target": target,
        "method": method,
        "valueNum": str(value.numerator),
        "valueDen": str(value.denominator),
        "valueFloat": float15(value),
    }
    if extra is not None:
        rec["extra"] = extra
    return rec


def emit_records(records: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": RECORDS_SCHEMA, "records": records}, indent=2) + "\n"
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for rec in records:
            cells = [str(rec[c]) if c != "valueFloat" else format(rec[c], ".15g") for c in CSV_COLUMNS]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    if fmt == "table":
        headers = list(CSV_COLUMNS)
        rows = [
            [str(rec[c]) if c != "valueFloat" else format(rec[c], ".15g") for c in headers]
            for rec in records
        ]
        widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(headers)]
        out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
        for r in rows:
            out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(out) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Family plumbing
# ---------------------------------------------------------------------------


def _family_from_args(args) -> GraphFamily:
    tag = args.family
    if tag == PM1:
        if args.n is None:
            raise UsageError("family pm1 needs --n")
        if args.p is None:
            raise UsageError("family pm1 needs --p")
        return pm1_alternating(args.n, args.p, args.q)
    if tag == PLUS12:
        if args.N is None:
            raise UsageError("family plus12 needs --N")
        if args.p is None:
            raise UsageError("family plus12 needs --p")
        return plus_one_two(args.N, args.p, args.q)
    if args.N is None:
        raise UsageError(f"family {tag} needs --N")
    if args.p is not None or args.q is not None:
        raise UsageError(f"family {tag} is unweighted; --p/--q do not apply")
    return pm1pm2_unweighted(args.N) if tag == PM1PM2 else plus12_unweighted(args.N)


def _check_vertex(v: int, count: int, what: str):
    if not 0 <= v < count:
        raise UsageError(f"{what} {v} outside 0..{count - 1}")


# ---------------------------------------------------------------------------
# hit
# ---------------------------------------------------------------------------


def _hit_one(family: GraphFamily, graph, start: int, target: int, args) -> dict:
    method = args.method
    if method == "oracle":
        value = oracle_hitting(graph, target)[start]
        return make_record(family, start, target, method, value)

    if method == "simulate":
        stats = simulate_hit(
            SimConfig(
                graph=graph,
                start=start,
                target=target,
                trials=args.trials,
                master_seed=args.seed,
                step_cap=args.step_cap,
            )
        )
        extra = {
            "trials": stats.trials,
            "meanSteps": float15(stats.exact_mean),
            "sampleVariance": float(format(stats.sample_variance, ".15g")),
            "standardError": float(format(stats.standard_error, ".15g")),
            "minSteps": stats.min_steps,
            "maxSteps": stats.max_steps,
            "seed": stats.seed,
        }
        return make_record(family, start, target, method, stats.exact_mean, extra=extra)

    norm = family.normalized()
    if family.tag == PM1:
        red_start, red_target = pm1_reduce(start, target, family.size)
        if method == "formula":
            value = ht_pm1(family.size, norm.p, red_start, red_target)
        elif method == "solve":
            sol = solve_h_vector_pm1(family.size, norm.p)
            im = IndexMap2n(family.size)
            ell = red_target if red_start == 0 or red_target >= 2 else red_target + 2 * family.size
            value = sol[im.position(red_start, ell) - 1]
        else:
            raise UsageError(f"method {method!r} not available for family pm1")
    elif family.tag == PLUS12:
        _, ell = plus12_reduce(start, target, family.size)
        if method == "formula":
            value = ht_plus12_closed(family.size, norm.p, ell)
        elif method == "solve":
            value = solve_h_plus12(family.size, norm.p)[ell - 1]
        else:
            raise UsageError(f"method {method!r} not available for family plus12")
    else:
        _, ell = plus12_reduce(start, target, family.size)
        if method != "baseline":
            raise UsageError(
                f"family {family.tag} supports methods baseline|oracle|simulate, not {method!r}"
            )
        if family.tag == PM1PM2:
            value = ht_pm1pm2_baseline(family.size, ell)
        else:
            value = ht_plus12_baseline(family.size, ell)
    return make_record(family, start, target, method, value)


def _cmd_hit(args) -> int:
    family = _family_from_args(args)
    graph = build_graph(family)
    count = family.vertex_count
    _check_vertex(args.start, count, "start")
    if args.all_targets:
        targets = [t for t in range(count) if t != args.start]
    else:
        if args.target is None:
            raise UsageError("need --target or --all-targets")
        _check_vertex(args.target, count, "target")
        if args.target == args.start:
            raise UsageError("target equals start; the hitting time is trivially 0")
        targets = [args.target]
    records = [_hit_one(family, graph, args.start, t, args) for t in targets]
    sys.stdout.write(emit_records(records, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# kirchhoff
# ---------------------------------------------------------------------------


def _cmd_kirchhoff(args) -> int:
    family = _family_from_args(args)
    method = args.method
    total = family.p + family.q
    norm = family.normalized()
    if method == "oracle":
        value = kirchhoff_from_hitting(build_graph(family), family)
    elif family.tag == PM1 and method == "formula":
        value = kf_pm1_closed(family.size, norm.p) / total
    elif family.tag == PM1 and method == "proof":
        halves = sum(
            ht_pm1_closed(family.size, norm.p, 0, ell) + ht_pm1_closed(family.size, norm.p, 1, ell)
            for ell in range(1, 2 * family.size)
        )
        value = halves / 2 / total
    elif family.tag == PLUS12 and method == "formula":
        value = kf_plus12_closed(family.size, norm.p) / total
    elif family.tag == PLUS12 and method == "proof":
        value = kf_plus12_proof_sum(family.size, norm.p) / total
    else:
        raise UsageError(f"method {method!r} not available for family {family.tag}")
    records = [make_record(family, -1, -1, method, value)]
    sys.stdout.write(emit_records(records, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    family = _family_from_args(args)
    count = family.vertex_count
    _check_vertex(args.start, count, "start")
    _check_vertex(args.target, count, "target")
    if args.start == args.target:
        raise UsageError("target equals start; nothing to simulate")
    args.method = "simulate"
    record = _hit_one(family, build_graph(family), args.start, args.target, args)
    sys.stdout.write(emit_records([record], args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# inverse (matrix dumps)
# ---------------------------------------------------------------------------


def _matrix_by_name(args) -> DenseMatrix:
    name = args.matrix
    need_n = {"h-pm1", "u2n", "u2n-inv", "r2n", "r2n-inv", "h2n-inv"}
    if name in need_n:
        if args.n is None:
            raise UsageError(f"matrix {name} needs --n")
        n = args.n
        if name == "u2n":
            return dec.build_U2n(n)
        if name == "u2n-inv":
            return invert(dec.build_U2n(n))
        if args.p is None and name != "u2n":
            raise UsageError(f"matrix {name} needs --p")
        p = args.p
        if name == "h-pm1":
            return build_H_pm1(n, p)[0]
        if name == "r2n":
            return dec.build_R2n(n, p)
        if name == "r2n-inv":
            return dec.r2n_inverse_closed(n, p)
        return dec.h2n_inverse_closed(n, p)
    if args.N is None:
        raise UsageError(f"matrix {name} needs --N")
    N = args.N
    if name == "pn":
        return dec.build_PN(N)
    if args.p is None:
        raise UsageError(f"matrix {name} needs --p")
    p = args.p
    builders = {
        "h-plus12": lambda: build_H_plus12(N, p),
        "ln": lambda: dec.build_LN(N, p),
        "ln-inv": lambda: dec.ln_inverse_closed(N, p),
        "un": lambda: dec.build_UN(N, p),
        "un-inv": lambda: dec.un_inverse_closed(N, p),
        "hn-inv": lambda: dec.hn_inverse_closed(N, p),
    }
    return builders[name]()


def _cmd_inverse(args) -> int:
    m = _matrix_by_name(args)
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.N is not None:
        params["N"] = args.N
    if args.p is not None:
        params["p"] = rat_str(args.p)
    if args.format == "json":
        doc = {
            "schema": "cayht-matrix-v1",
            "matrix": args.matrix,
            "params": params,
            "rows": m.rows,
            "cols": m.cols,
            "entries": [[rat_str(m.at(i, j)) for j in range(1, m.cols + 1)] for i in range(1, m.rows + 1)],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:  # csv
        lines = ["i,j,valueNum,valueDen"]
        for i in range(1, m.rows + 1):
            for j in range(1, m.cols + 1):
                x = m.at(i, j)
                lines.append(f"{i},{j},{x.numerator},{x.denominator}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _ones_column(k) -> DenseMatrix:
    return DenseMatrix(k, 1, (Fraction(1),) * k)


def _column(values) -> DenseMatrix:
    return DenseMatrix(len(values), 1, tuple(values))


def _job_thm31(job):
    n, p = job
    report = dec.verify_pm1_decomposition(n, p)
    return {"n": n, "p": rat_str(p)}, report, None


def _job_thm42(job):
    N, p = job
    report = dec.verify_plus12_lu(N, p)
    return {"N": N, "p": rat_str(p)}, report, None


def _job_rinv(job):
    n, p = job
    prod = mat_mul(dec.build_R2n(n, p), dec.r2n_inverse_closed(n, p))
    report = compare(prod, DenseMatrix.identity(prod.rows), context=f"rinv n={n} p={rat_str(p)}")
    return {"n": n, "p": rat_str(p)}, report, None


def _job_linv(job):
    N, p = job
    prod = mat_mul(dec.build_LN(N, p), dec.ln_inverse_closed(N, p))
    report = compare(prod, DenseMatrix.identity(prod.rows), context=f"linv N={N} p={rat_str(p)}")
    return {"N": N, "p": rat_str(p)}, report, None


def _job_uinv(job):
    N, p = job
    prod = mat_mul(dec.build_UN(N, p), dec.un_inverse_closed(N, p))
    report = compare(prod, DenseMatrix.identity(prod.rows), context=f"uinv N={N} p={rat_str(p)}")
    return {"N": N, "p": rat_str(p)}, report, None


def _job_hinv_pm1(job):
    n, p = job
    h, _ = build_H_pm1(n, p)
    prod = mat_mul(h, dec.h2n_inverse_closed(n, p))
    report = compare(prod, DenseMatrix.identity(prod.rows), context=f"hinv-pm1 n={n} p={rat_str(p)}")
    return {"n": n, "p": rat_str(p)}, report, None


def _job_hinv_plus12(job):
    N, p = job
    h = build_H_plus12(N, p)
    prod = mat_mul(h, dec.hn_inverse_closed(N, p))
    report = compare(prod, DenseMatrix.identity(prod.rows), context=f"hinv-plus12 N={N} p={rat_str(p)}")
    return {"N": N, "p": rat_str(p)}, report, None


def _job_residual_pm1(job):
    n, p = job
    h, _ = build_H_pm1(n, p)
    closed = _column(closed_h_vector_pm1(n, p))
    report = compare(
        mat_mul(h, closed), _ones_column(h.rows), context=f"residual pm1 n={n} p={rat_str(p)}"
    )
    return {"family": PM1, "n": n, "p": rat_str(p)}, report, None


def _job_residual_plus12(job):
    N, p = job
    h = build_H_plus12(N, p)
    closed = _column([ht_plus12_closed(N, p, ell) for ell in range(1, N)])
    report = compare(
        mat_mul(h, closed), _ones_column(h.rows), context=f"residual plus12 N={N} p={rat_str(p)}"
    )
    return {"family": PLUS12, "N": N, "p": rat_str(p)}, report, None


def _job_kf_pm1(job):
    n, p = job
    formula = kf_pm1_closed(n, p)
    fam = pm1_alternating(n, p)
    oracle = kirchhoff_from_hitting(build_graph(fam), fam)
    report = compare(
        DenseMatrix(1, 1, (formula,)),
        DenseMatrix(1, 1, (oracle,)),
        context=f"kf-pm1 n={n} p={rat_str(p)}",
    )
    values = {"formula": rat_str(formula), "oracle": rat_str(oracle), "equal": formula == oracle}
    return {"n": n, "p": rat_str(p)}, report, values


def _job_kf_plus12(job):
    N, p = job
    printed = kf_plus12_closed(N, p)
    penultimate = kf_plus12_proof_sum(N, p)
    fam = plus_one_two(N, p)
    oracle = kirchhoff_from_hitting(build_graph(fam), fam)
    # column 1 audits the printed simplification, column 2 its own
    # pre-simplification form; expected value is the oracle in both
    report = compare(
        DenseMatrix(1, 2, (printed, penultimate)),
        DenseMatrix(1, 2, (oracle, oracle)),
        context=f"kf-plus12 N={N} p={rat_str(p)}",
    )
    values = {
        "printed": rat_str(printed),
        "penultimate": rat_str(penultimate),
        "oracle": rat_str(oracle),
        "printed_equals_oracle": printed == oracle,
        "penultimate_equals_oracle": penultimate == oracle,
    }
    return {"N": N, "p": rat_str(p)}, report, values


def _job_baseline11(job):
    (N,) = job
    g = build_graph(pm1pm2_unweighted(N))
    printed = [ht_pm1pm2_baseline(N, ell) for ell in range(1, N)]
    oracle = [oracle_hitting(g, ell)[0] for ell in range(1, N)]
    report = compare(_column(printed), _column(oracle), context=f"baseline11 N={N}")
    values = [
        {
            "ell": ell,
            "printed": rat_str(printed[ell - 1]),
            "oracle": rat_str(oracle[ell - 1]),
            "equal": printed[ell - 1] == oracle[ell - 1],
        }
        for ell in range(1, N)
    ]
    return {"N": N}, report, values


def _job_baseline12(job):
    (N,) = job
    g = build_graph(plus12_unweighted(N))
    printed = [ht_plus12_baseline(N, ell) for ell in range(1, N)]
    oracle = [oracle_hitting(g, ell)[0] for ell in range(1, N)]
    report = compare(_column(printed), _column(oracle), context=f"baseline12 N={N}")
    values = [
        {
            "ell": ell,
            "printed": rat_str(printed[ell - 1]),
            "oracle": rat_str(oracle[ell - 1]),
            "equal": printed[ell - 1] == oracle[ell - 1],
        }
        for ell in range(1, N)
    ]
    return {"N": N}, report, values


# check name -> (job function, default sizes, default p grid, size flag)
_CHECKS = {
    "thm31": (_job_thm31, range(2, 11), P_DEFAULT, "n"),
    "thm42": (_job_thm42, range(6, 17), P_DEFAULT, "N"),
    "rinv": (_job_rinv, range(2, 11), P_DEFAULT, "n"),
    "linv": (_job_linv, range(6, 17), P_DEFAULT, "N"),
    "uinv": (_job_uinv, range(6, 17), P_DEFAULT, "N"),
    "hinv-pm1": (_job_hinv_pm1, range(2, 11), P_DEFAULT, "n"),
    "hinv-plus12": (_job_hinv_plus12, range(6, 17), P_DEFAULT, "N"),
    "kf-pm1": (_job_kf_pm1, range(2, 9), P_DEFAULT, "n"),
    "kf-plus12": (_job_kf_plus12, range(3, 17), P_DEFAULT + (Fraction(1),), "N"),
    "baseline11": (_job_baseline11, range(5, 11), None, "N"),
    "baseline12": (_job_baseline12, range(3, 11), None, "N"),
}

CHECK_NAMES = tuple(_CHECKS) + ("residual",)


def _jobs_for_check(name: str, args) -> list:
    if name == "residual":
        fams = [args.family] if args.family else [PM1, PLUS12]
        ps = args.p_list or list(P_DEFAULT)
        jobs = []
        for fam in fams:
            if fam == PM1:
                sizes = args.n_list or list(range(2, 11))
                jobs.extend((("pm1", n, p) for n in sizes for p in ps))
            elif fam == PLUS12:
                sizes = args.N_list or list(range(3, 17))
                jobs.extend((("plus12", N, p) for N in sizes for p in ps))
            else:
                raise UsageError("residual check applies to families pm1 and plus12")
        return jobs
    fn, default_sizes, default_ps, size_flag = _CHECKS[name]
    sizes = (args.n_list if size_flag == "n" else args.N_list) or list(default_sizes)
    if default_ps is None:
        return [(s,) for s in sizes]
    ps = args.p_list or list(default_ps)
    return [(s, p) for s in sizes for p in ps]


def _run_check(name: str, args) -> dict:
    jobs = _jobs_for_check(name, args)
    if name == "residual":
        fn = lambda job: (
            _job_residual_pm1(job[1:]) if job[0] == "pm1" else _job_residual_plus12(job[1:])
        )
    else:
        fn = _CHECKS[name][0]
    results = _map_jobs(fn, jobs)
    out_jobs = []
    for params, report, values in results:
        entry = {"params": params, "report": report.to_json_dict()}
        if values is not None:
            entry["values"] = values
        out_jobs.append(entry)
    total = sum(j["report"]["total_mismatches"] for j in out_jobs)
    return {"check": name, "jobs": out_jobs, "total_mismatches": total}


def _cmd_verify(args) -> int:
    if args.all:
        names = list(CHECK_NAMES)
    elif args.check:
        names = [args.check]
    else:
        raise UsageError("need --check NAME or --all")
    checks = [_run_check(name, args) for name in names]
    total = sum(c["total_mismatches"] for c in checks)
    doc = {
        "schema": ERRATA_SCHEMA,
        "checks": checks,
        "total_mismatches": total,
        "all_ok": total == 0,
    }
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if total == 0 else EXIT_DISCREPANCY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_family_flags(sp):
    sp.add_argument("--family", required=True, choices=FAMILY_TAGS)
    sp.add_argument("--n", type=int, help="half the vertex count of the pm1 family")
    sp.add_argument("--N", type=int, help="vertex count of the other families")
    sp.add_argument("--p", type=parse_rational, help="first generator weight, exact a/b")
    sp.add_argument("--q", type=parse_rational, help="second generator weight (default 1-p)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cayht",
        allow_abbrev=False,
        description=(
            "Exact hitting times, effective resistances and Kirchhoff indices "
            "for weighted circulant walks, with entrywise audits of the "
            "transcribed closed-form tables."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    hit = sub.add_parser("hit", help="average hitting times", description="Average hitting times by formula, structured solve, oracle, baseline, or simulation.")
    _add_family_flags(hit)
    hit.add_argument("--start", type=int, default=0)
    hit.add_argument("--target", type=int)
    hit.add_argument("--all-targets", action="store_true")
    hit.add_argument(
        "--method",
        default="formula",
        choices=["formula", "solve", "oracle", "simulate", "baseline"],
    )
    hit.add_argument("--trials", type=int, default=100_000)
    hit.add_argument("--seed", type=int, default=42)
    hit.add_argument("--step-cap", type=int, default=2**40)
    hit.add_argument("--format", default="table", choices=["json", "csv", "table"])
    hit.set_defaults(func=_cmd_hit)

    ver = sub.add_parser("verify", help="run formula audits", description="Audit transcribed formulas/tables against exact oracles over parameter grids; exit 3 when discrepancies are found.")
    ver.add_argument("--check", choices=sorted(CHECK_NAMES))
    ver.add_argument("--all", action="store_true", help="run every check on its default grid")
    ver.add_argument("--n", dest="n_list", type=parse_int_list, help="n grid, e.g. 2..8 or 2,5")
    ver.add_argument("--N", dest="N_list", type=parse_int_list, help="N grid, e.g. 6..16")
    ver.add_argument("--p", dest="p_list", type=parse_rational_list, help="comma list of a/b")
    ver.add_argument("--family", choices=[PM1, PLUS12], help="restrict the residual check")
    ver.add_argument("--report", metavar="FILE", help="also write the JSON report to FILE")
    ver.add_argument("--format", default="json", choices=["json"])
    ver.set_defaults(func=_cmd_verify)

    kf = sub.add_parser("kirchhoff", help="Kirchhoff index", description="Kirchhoff index by closed formula, derivation sum, or all-pairs oracle.")
    _add_family_flags(kf)
    kf.add_argument("--method", default="formula", choices=["formula", "proof", "oracle"])
    kf.add_argument("--format", default="table", choices=["json", "csv", "table"])
    kf.set_defaults(func=_cmd_kirchhoff)

    sim = sub.add_parser("simulate", help="Monte Carlo hitting times", description="Seeded, reproducible Monte Carlo estimate of one hitting time.")
    _add_family_flags(sim)
    sim.add_argument("--start", type=int, required=True)
    sim.add_argument("--target", type=int, required=True)
    sim.add_argument("--trials", type=int, default=100_000)
    sim.add_argument("--seed", type=int, default=42)
    sim.add_argument("--step-cap", type=int, default=2**40)
    sim.add_argument("--format", default="table", choices=["json", "csv", "table"])
    sim.set_defaults(func=_cmd_simulate)

    inv = sub.add_parser("inverse", help="dump structured matrices", description="Dump any structured matrix or closed-form inverse as JSON or CSV.")
    inv.add_argument(
        "--matrix",
        required=True,
        choices=[
            "h-pm1",
            "u2n",
            "u2n-inv",
            "r2n",
            "r2n-inv",
            "h2n-inv",
            "h-plus12",
            "pn",
            "ln",
            "ln-inv",
            "un",
            "un-inv",
            "hn-inv",
        ],
    )
    inv.add_argument("--n", type=int)
    inv.add_argument("--N", type=int)
    inv.add_argument("--p", type=parse_rational)
    inv.add_argument("--format", default="json", choices=["json", "csv"])
    inv.set_defaults(func=_cmd_inverse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command (hit, verify, kirchhoff, simulate, inverse)")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnreachableVertexError, GraphParameterError, StepCapExceededError) as exc:
        print(f"degenerate configuration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
