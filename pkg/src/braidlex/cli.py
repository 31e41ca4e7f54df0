"""Command-line surface.

Exit codes: 0 success, 2 state-count mismatch, 3 matrix mismatch,
4 non-convergence, 5 verification failure, 6 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import automaton as am
from . import configs as cf
from . import matrixgen as mg
from . import oracle
from . import spectral as sp
from .errors import BraidLexError, BuildLimitError, ConvergenceError

EXIT_OK = 0
EXIT_COUNT_MISMATCH = 2
EXIT_MATRIX_MISMATCH = 3
EXIT_NO_CONVERGENCE = 4
EXIT_VERIFY_FAILED = 5
EXIT_BAD_INPUT = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text)


def parse_config_spec(spec: str, n: int) -> cf.SegmentConfig:
    """Grammar: ``i,j,k,[p1-q1;p2-q2;...]`` with an empty last field for S = {}."""
    parts = spec.split(",", 3)
    if len(parts) != 4:
        raise ValueError(f"config spec needs four comma-separated fields: {spec!r}")
    try:
        i, j, k = (int(p) for p in parts[:3])
    except ValueError as exc:
        raise ValueError(f"bad integer in config spec {spec!r}") from exc
    seg_part = parts[3].strip()
    segments: list[tuple[int, int]] = []
    if seg_part:
        if not (seg_part.startswith("[") and seg_part.endswith("]")):
            raise ValueError(f"segment field must look like [p-q;p-q]: {seg_part!r}")
        body = seg_part[1:-1].strip()
        if body:
            for chunk in body.split(";"):
                p, _, q = chunk.partition("-")
                segments.append((int(p), int(q)))
    c = cf.SegmentConfig(i, j, k, tuple(sorted(segments)))
    if not cf.validate(c, n):
        raise ValueError(f"{c} is not a valid segment configuration for n={n}")
    return c


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_states(args) -> int:
    n = args.n
    formula = am.state_count_formula(n)
    recurrence = am.state_count_recurrence(n)
    values = [formula, recurrence]
    labels = ["formula", "recurrence"]
    try:
        bfs = len(am.build(n))
        values.append(bfs)
        labels.append("bfs")
    except BuildLimitError:
        pass
    print(" ".join(str(v) for v in values), f"({', '.join(labels)})")
    if len(set(values)) != 1:
        print("state-count disagreement", file=sys.stderr)
        return EXIT_COUNT_MISMATCH
    return EXIT_OK


def cmd_matrix(args) -> int:
    n = args.n
    if args.which == "M":
        a = am.build(n)
        m = am.incidence_matrix(a, mg.canonical_full_ordering(a))
    elif args.which == "R":
        a = am.build(n)
        m = am.recurrent_matrix(a, mg.canonical_ordering(a))
    else:  # R-appendix: the directly generated matrix
        m = mg.build_R_direct(n)
    if args.check:
        a = am.build(n)
        diffs = mg.crosscheck_generated(a)
        if diffs:
            p, q, side = diffs[0]
            print(f"mismatch at ({p}, {q}): {side}", file=sys.stderr)
            return EXIT_MATRIX_MISMATCH
        print(f"generated and BFS matrices agree for n={n} ({m.dim}x{m.dim})")
    text = mg.to_csv(m) if args.format == "csv" else mg.to_matrix_market(m)
    _emit(text, args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    a = am.build(args.n)
    counts, total = am.count_words(a, args.k)
    order = mg.canonical_full_ordering(a)
    print(f"total {total}")
    print("per-state", " ".join(str(counts[s]) for s in order))
    if args.by_letter:
        per = am.ending_letter_counts(a, args.k)
        for r in range(1, args.n + 1):
            print(f"ending-with a{r} {per[r]}")
    return EXIT_OK


def _analyze(n: int, tol: float) -> sp.SpectralAnalysis:
    return sp.analyze(am.build(n), tol=tol)


def cmd_spectrum(args) -> int:
    an = _analyze(args.n, args.tol)
    row = an.row
    print(f"n {args.n}")
    print(f"lambda {row.lam:.17f}")
    print(f"P_a1 {row.p_a1:.18f}")
    print(f"P_1 {row.p_1:.10f}")
    print(f"residual {an.result.residual:.3e}")
    print(f"iterations {an.result.iterations}")
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        d_lam, d_pa1, d_p1 = (int(x) for x in args.digits.split(","))
    except ValueError:
        raise ValueError(f"--digits wants three comma-separated ints, got {args.digits!r}")
    rows = []
    w_lam, w_pa1, w_p1 = d_lam + 2, d_pa1 + 3, d_p1 + 2
    print(f"{'n':>2}  {'lambda':<{w_lam}} {'P_a1':<{w_pa1}} {'P_1':<{w_p1}}")
    for n in range(args.start, args.stop + 1):
        an = _analyze(n, args.tol)
        rows.append(an.row)
        print(
            f"{n:>2}  {an.row.lam:<{w_lam}.{d_lam - 1}f} "
            f"{an.row.p_a1:<{w_pa1}.{d_pa1}f} {an.row.p_1:<{w_p1}.{d_p1}f}"
        )
    report = sp.bound_report(rows)
    for name, ok in report.checks:
        print(f"bound {name}: {'ok' if ok else 'VIOLATED'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    n = args.n
    a = am.build(n)
    failures: list[str] = []

    for k in range(args.max_len + 1):
        expected = oracle.enumerate_language(n, k)
        got = set()
        stack = [((), 0)]
        while stack:
            w, s = stack.pop()
            if len(w) == k:
                got.add(w)
                continue
            for r in a.out_letters(s):
                stack.append((w + (r,), a.target(s, r)))
        ok = got == expected
        print(f"language k={k}: {'pass' if ok else 'FAIL'} ({len(expected)} words)")
        if not ok:
            bad = sorted(got.symmetric_difference(expected))[0]
            failures.append(f"language mismatch at k={k}: {bad}")
            break

    if not failures:
        cap = args.max_forbidden_len
        if cap is None:
            cap = min(args.max_len, 6)
        checked = 0
        for k in range(cap + 1):
            for w in sorted(oracle.enumerate_language(n, k)):
                state = am.state_after(a, w)
                expected_f = oracle.minimal_forbidden_prefixes(w, n)
                got_f = cf.psi(a.states[state], n)
                if expected_f != got_f:
                    failures.append(f"forbidden-prefix mismatch after {w}")
                    break
                checked += 1
            if failures:
                break
        print(
            f"forbidden-prefix sets: {'FAIL' if failures else 'pass'} ({checked} words)"
        )

    images = {}
    inj_ok = True
    for c in cf.all_configs(n):
        im = cf.psi(c, n)
        if im in images:
            inj_ok = False
            failures.append(f"psi collision: {c} and {images[im]}")
            break
        images[im] = c
    print(f"psi injectivity: {'pass' if inj_ok else 'FAIL'} ({len(images)} configs)")

    if failures:
        print(failures[0], file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_show_state(args) -> int:
    c = parse_config_spec(args.config, args.n)
    d = cf.to_diagram(c, args.n)
    print(cf.render_diagram(d))
    words = sorted(cf.psi(c, args.n))
    body = ", ".join("a" + " a".join(str(x) for x in w) for w in words)
    print(f"psi = {{{body}}}")
    return EXIT_OK


def cmd_export(args) -> int:
    a = am.build(args.n)
    text = am.to_json(a) if args.format == "json" else am.to_dot(a)
    _emit(text, args.out)
    return EXIT_OK


def cmd_seed_docs(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    a = am.build(2)
    full = mg.canonical_full_ordering(a)
    m2 = am.incidence_matrix(a, full)
    r2 = am.recurrent_matrix(a, mg.canonical_ordering(a))
    counts, total = am.count_words(a, 50)
    row = " ".join(str(counts[s]) for s in full)
    (outdir / "m2.csv").write_text(mg.to_csv(m2))
    (outdir / "r2.csv").write_text(mg.to_csv(r2))
    (outdir / "m2_pow50_first_row.txt").write_text(row + f"\ntotal {total}\n")
    print(f"wrote m2.csv, r2.csv, m2_pow50_first_row.txt to {outdir}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braidlex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("states", help="state counts by formula, recurrence, and BFS")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("matrix", help="emit incidence matrices")
    p.add_argument("n", type=int)
    p.add_argument("--which", choices=["M", "R", "R-appendix"], default="R")
    p.add_argument("--format", choices=["mm", "csv"], default="mm")
    p.add_argument("--check", action="store_true",
                   help="diff the generated R against the BFS one")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("count", help="exact number of length-k representatives")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--by-letter", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("spectrum", help="growth rate and ending proportions")
    p.add_argument("n", type=int)
    p.add_argument("--tol", type=float, default=sp.DEFAULT_TOL)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("table", help="growth-rate table with bound checks")
    p.add_argument("--from", dest="start", type=int, default=2)
    p.add_argument("--to", dest="stop", type=int, default=9)
    p.add_argument("--tol", type=float, default=sp.DEFAULT_TOL)
    p.add_argument("--digits", default="18,18,10",
                   help="printed digits for lambda, P_a1, P_1")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="cross-check the automaton against brute force")
    p.add_argument("n", type=int)
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--max-forbidden-len", type=int, default=None,
                   help="length cap for the forbidden-prefix comparison "
                        "(default: min(max-len, 6))")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("show-state", help="render one configuration")
    p.add_argument("n", type=int)
    p.add_argument("config", help='spec: "i,j,k,[p-q;p-q]" (empty last field for no segments)')
    p.set_defaults(func=cmd_show_state)

    p = sub.add_parser("export", help="whole automaton as JSON or DOT")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("seed-docs", help="regenerate the worked n=2 artifacts")
    p.add_argument("--outdir", default="docs")
    p.set_defaults(func=cmd_seed_docs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (BraidLexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
