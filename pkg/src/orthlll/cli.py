"""Command-line interface: ``orthlll {kernel,reduce,analyze,experiment}``.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification failure.
"""

import argparse
import csv
import io
import sys
import warnings

import mpmath

from .bounds import BoundReport, leading_minor_nonzero, log_norm, swap_bound_classical, swap_bound_theorem2
from .exactlin import NotFullRankError, columns, from_columns
from .experiment import crossover_summary, random_full_rank, run_sweep, write_csv
from .formats import MatrixFormatError, build_trace, dump_trace, format_matrix, load_trace, read_matrix
from .lll import is_lll_reduced, lll_reduce, parse_delta
from .ortho import ExtractionError, SubThresholdWarning, build_extended, orthogonal_lattice_basis, verify_kernel
from .potential import PRECISION, SLACK, half_log2, log2_swap_gain, swap_bound_from_potentials

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


class VerificationError(Exception):
    pass


def _load(path):
    try:
        return read_matrix(path)
    except (OSError, MatrixFormatError) as exc:
        raise InputError(str(exc)) from exc


def _delta(text):
    try:
        return parse_delta(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def cmd_kernel(args, out):
    a = _load(args.matrix)
    delta = _delta(args.delta)
    n, k = len(a), len(a[0])
    if n <= k:
        raise InputError("kernel is trivial" if n == k else "need more rows than columns")
    try:
        # sub-threshold notes are printed below from res.warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SubThresholdWarning)
            res = orthogonal_lattice_basis(
                a,
                mode=args.mode,
                K=args.K,
                c=args.c,
                delta=delta,
                checkpoints=bool(args.trace),
            )
    except NotFullRankError as exc:
        raise InputError(str(exc)) from exc
    except ExtractionError as exc:
        raise VerificationError(str(exc)) from exc
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    report = verify_kernel(a, res.C, delta)
    if not report.ok:
        raise VerificationError("; ".join(report.failures))
    if args.trace:
        tr = res.trace
        ext_rows = from_columns(build_extended(a, res.K_used).basis)
        with mpmath.workprec(PRECISION):
            lna = log_norm(a)
            bounds = BoundReport(
                n,
                k,
                lna,
                swap_bound_theorem2(n, k, lna),
                swap_bound_classical(n, k, half_log2(res.K_used**2), lna),
                min(
                    swap_bound_from_potentials(tr.initial_norms, tr.final_norms, kk)
                    for kk in range(1, n + 1)
                ),
                res.swap_count,
                leading_minor_nonzero(a),
            )
        doc = build_trace(ext_rows, from_columns(res.reduced), tr, n, k, res.K_used, bounds)
        dump_trace(doc, args.trace)
    out.write(format_matrix(res.C))
    return EXIT_OK


def cmd_reduce(args, out):
    rows = _load(args.matrix)
    delta = _delta(args.delta)
    basis = columns(rows)
    if len(basis) > len(rows):
        raise InputError("not full column rank")
    try:
        reduced, tr = lll_reduce(basis, delta, checkpoints=bool(args.trace))
    except NotFullRankError as exc:
        raise InputError("not full column rank") from exc
    if not is_lll_reduced(reduced, delta):
        raise VerificationError("output is not LLL-reduced")
    out_rows = from_columns(reduced)
    if args.trace:
        dump_trace(build_trace(rows, out_rows, tr, len(basis)), args.trace)
    out.write(format_matrix(out_rows))
    return EXIT_OK


def analyze_trace(doc, ks=None, prec=PRECISION):
    """Per-k potential drops and bound check from a trace document.

    Returns ``(lines, csv_rows, ok)``.
    """
    if "potentials" not in doc or "potential_endpoints" not in doc:
        raise InputError("trace has no potential checkpoints")
    swaps = doc["swap_count"]
    with mpmath.workprec(prec):
        gain = log2_swap_gain(prec)
        ends = {e["k"]: (mpmath.mpf(e["input"]), mpmath.mpf(e["output"])) for e in doc["potential_endpoints"]}
        all_ks = sorted(ends)
        ks = all_ks if ks is None else ks
        drops = {kk: [] for kk in ks}
        for p in doc["potentials"]:
            if p["k"] in drops:
                drops[p["k"]].append((p["swap"], mpmath.mpf(p["before"]) - mpmath.mpf(p["after"])))
        lines, csv_rows, ok = [], [], True
        bound_min = min((ends[kk][0] - ends[kk][1]) / gain for kk in all_ks)
        for kk in ks:
            if kk not in ends:
                raise InputError(f"no potentials for k={kk}")
            if len(drops[kk]) != swaps:
                raise InputError(f"trace has {len(drops[kk])} checkpoints for k={kk}, expected {swaps}")
            bad = [(s, d) for s, d in drops[kk] if d < gain - SLACK]
            bound = (ends[kk][0] - ends[kk][1]) / gain
            min_drop = min((d for _, d in drops[kk]), default=None)
            ok = ok and not bad
            lines.append(
                f"k={kk}: min decrease "
                + ("n/a" if min_drop is None else mpmath.nstr(min_drop, 12))
                + f", violations {len(bad)}, swap bound {mpmath.nstr(bound, 12)}"
            )
            for s, d in bad:
                lines.append(f"  VIOLATION k={kk} swap {s}: decrease {mpmath.nstr(d, 12)}")
            for s, d in drops[kk]:
                csv_rows.append([kk, s, mpmath.nstr(d, 20)])
        bound_ok = swaps <= bound_min + mpmath.mpf("1e-6")
        ok = ok and bound_ok
        lines.append(f"measured swaps {swaps}, min_k bound {mpmath.nstr(bound_min, 12)}: " + ("ok" if bound_ok else "EXCEEDED"))
    if swaps == 0 and ok:
        lines.insert(0, "0 swaps, all bounds satisfied")
    elif ok:
        lines.insert(0, f"{swaps} swaps, all bounds satisfied")
    else:
        lines.insert(0, f"{swaps} swaps, VIOLATIONS FOUND")
    return lines, csv_rows, ok


def cmd_analyze(args, out):
    try:
        doc = load_trace(args.trace_file)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    ks = None if args.k == "all" else [int(args.k)]
    lines, csv_rows, ok = analyze_trace(doc, ks)
    out.write("\n".join(lines) + "\n")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "swap", "decrease"])
            w.writerows(csv_rows)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_experiment(args, out):
    if args.matrix:
        a = _load(args.matrix)
        bits = None
    else:
        if not 1 <= args.k < args.n:
            raise InputError("need n > k >= 1")
        if not 0 <= args.entry_bits <= 62:
            raise InputError("entry bits must be in 0..62")
        a = random_full_rank(args.n, args.k, args.entry_bits, args.seed)
        bits = args.entry_bits
    if len(a) <= len(a[0]):
        raise InputError("need n > k >= 1")
    if args.K_sweep < 1:
        raise InputError("--K-sweep must be positive")
    try:
        rows = run_sweep(a, args.K_sweep, bits, jobs=args.jobs)
    except NotFullRankError as exc:
        raise InputError(str(exc)) from exc
    buf = io.StringIO()
    write_csv(rows, buf)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    cross, marks = crossover_summary(a, rows)
    print(f"crossover log2(K) = {mpmath.nstr(cross, 10)}", file=sys.stderr)
    for (i, above, below), r in zip(marks, rows):
        verdict = "thm2 < classical" if below else "thm2 >= classical"
        side = "above" if above else "below"
        print(f"sweep {i}: K_bits={r.K_bits} {side} crossover, {verdict}, swaps {r.swaps}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="orthlll", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    k = sub.add_parser("kernel", help="LLL-reduced basis of the orthogonal lattice of A")
    k.add_argument("matrix")
    k.add_argument("--mode", choices=["general", "heuristic"], default="general")
    k.add_argument("--K", type=int, default=None, help="explicit scaling parameter")
    k.add_argument("--c", type=int, default=1, help="exponent constant of the heuristic threshold")
    k.add_argument("--delta", default="3/4")
    k.add_argument("--trace")
    k.set_defaults(func=cmd_kernel)

    r = sub.add_parser("reduce", help="LLL-reduce the columns of a matrix")
    r.add_argument("matrix")
    r.add_argument("--delta", default="3/4")
    r.add_argument("--trace")
    r.set_defaults(func=cmd_reduce)

    a = sub.add_parser("analyze", help="check potential decreases recorded in a trace")
    a.add_argument("trace_file")
    a.add_argument("--k", default="all")
    a.add_argument("--csv")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("experiment", help="swap counts over a K sweep")
    e.add_argument("--n", type=int, default=6)
    e.add_argument("--k", type=int, default=2)
    e.add_argument("--entry-bits", type=int, default=8)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--K-sweep", type=int, default=4)
    e.add_argument("--matrix", help="use this A instead of a random one")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "k", None) not in (None, "all") and args.command == "analyze":
        try:
            int(args.k)
        except ValueError:
            print("orthlll: error: --k must be an integer or 'all'", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
